"""
Command-line jobs: parse inputs, run one computation, write one report.

Exit status: 0 on success, 1 when a verification finds a mismatch or an
internal consistency check fails, 2 on input errors (parse failures, invalid
categories or diagrams, size guard).
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from typing import Optional

import config
from settings import SETTINGS
from src.cli.random_instances import random_instance
from src.cli.reports import render
from src.cohomology.baues_wirsching import bw_cohomology, hochschild_mitchell
from src.cohomology.limits import limit_cohomology
from src.config_manager import get_config, reload_config, update_config_with_settings
from src.diagrams.algebra import CoeffAlgebra
from src.diagrams.ext_system import ext_computations
from src.diagrams.functor import check_functor
from src.diagrams.io import dump_diagram, load_diagram
from src.diagrams.natural_system import hom_bimodule, hom_natural_system, natural_system_from_functor
from src.errors import CompositionNonzero, CrossCheckFailed, InputError
from src.fincat.category import require_valid, validate
from src.fincat.io import dump_category, load_category
from src.homalg.oracle import oracle_ext
from src.specseq.double_complex import build_double_complex
from src.specseq.functor_resolution import resolve_functor
from src.specseq.spectral import spectral_sequence
from src.specseq.verify import verify_theorem

logger = logging.getLogger(__name__)

COMMANDS = ('validate', 'limits', 'bw', 'hochschild-mitchell', 'ext', 'specseq', 'verify',
            'random-suite')


@dataclass(frozen=True)
class JobSpec:
    command: str
    input: Optional[str] = None
    diagram_f: Optional[str] = None
    diagram_g: Optional[str] = None
    coefficient: Optional[CoeffAlgebra] = None
    degree: int = config.DEFAULT_DEGREE
    seed: int = 0
    out: Optional[str] = None
    format: str = 'json'

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.degree < config.MIN_DEGREE:
            raise InputError(f"--degree must be at least {config.MIN_DEGREE}, got {self.degree}")
        if self.format not in ('json', 'table'):
            raise InputError(f"--format must be json or table, got {self.format!r}")


class JobResult:
    def __init__(self, report, status=config.EXIT_OK):
        self.report = report
        self.status = status


# -- inputs -----------------------------------------------------------

def _category(job):
    if not job.input:
        raise InputError(f"{job.command} needs --input")
    return require_valid(load_category(job.input))


def _diagram(job, category, which):
    path = job.diagram_f if which == 'F' else job.diagram_g
    if not path:
        raise InputError(f"{job.command} needs --diagram-{which.lower()}")
    functor = load_diagram(path, category, name=which, coefficient=job.coefficient)
    return functor.require_valid()


def _pair(job, category):
    source = _diagram(job, category, 'F')
    target = _diagram(job, category, 'G') if job.diagram_g else source
    if source.algebra != target.algebra:
        raise InputError(f"F is over {source.algebra}, G over {target.algebra}")
    return source, target


def _over_field(functor, command):
    if functor.algebra.integral:
        raise InputError(f"{command} runs over F_p[x]/(x^m); use --coeff p,m")


# -- commands ---------------------------------------------------------

def cmd_validate(job):
    category = load_category(job.input) if job.input else None
    if category is None:
        raise InputError("validate needs --input")
    report = validate(category)
    out = {'command': 'validate', 'category': report.to_dict()}
    if not report.ok:
        return JobResult(out, config.EXIT_INPUT_ERROR)
    for which, path in (('F', job.diagram_f), ('G', job.diagram_g)):
        if path:
            functor = load_diagram(path, category, name=which, coefficient=job.coefficient)
            diagram_report = check_functor(functor)
            out[which] = diagram_report.to_dict()
            if not diagram_report.ok:
                return JobResult(out, config.EXIT_INPUT_ERROR)
    return JobResult(out)


def cmd_limits(job):
    category = _category(job)
    functor = _diagram(job, category, 'F')
    result = limit_cohomology(category, functor, job.degree)
    return JobResult({'command': 'limits', 'coefficient': functor.algebra.to_dict(),
                      'cohomology': result.to_dict()})


def cmd_bw(job):
    """Coefficients F(cod -), or Hom(F(dom -), G(cod -)) when G is given."""
    category = _category(job)
    source = _diagram(job, category, 'F')
    if job.diagram_g:
        target = _diagram(job, category, 'G')
        system = hom_natural_system(source, target)
    else:
        system = natural_system_from_functor(source)
    result = bw_cohomology(category, system, job.degree)
    return JobResult({'command': 'bw', 'system': system.name,
                      'coefficient': source.algebra.to_dict(), 'cohomology': result.to_dict()})


def cmd_hochschild_mitchell(job):
    category = _category(job)
    source, target = _pair(job, category)
    bimodule = hom_bimodule(source, target)
    result = hochschild_mitchell(category, bimodule, job.degree)
    return JobResult({'command': 'hochschild-mitchell', 'bimodule': bimodule.name,
                      'coefficient': source.algebra.to_dict(), 'cohomology': result.to_dict()})


def cmd_ext(job):
    category = _category(job)
    source, target = _pair(job, category)
    _over_field(source, 'ext')
    computations = ext_computations(source, target, job.degree)
    objectwise = {
        f"{category.objects[a]}->{category.objects[b]}": ext.dims()
        for (a, b), ext in sorted(computations.items())
    }
    return JobResult({'command': 'ext', 'coefficient': source.algebra.to_dict(),
                      'objectwise': objectwise,
                      'functor_category': oracle_ext(source, target, job.degree)})


def cmd_specseq(job):
    category = _category(job)
    source, target = _pair(job, category)
    _over_field(source, 'specseq')
    window = job.degree + 1
    resolution = resolve_functor(source, window)
    double = build_double_complex(source, target, resolution, window, window)
    out = {'command': 'specseq', 'N': job.degree, 'double_complex': double.dims}
    # the row filtration is the first spectral sequence, the column filtration the second
    for label, which in (('first', 'row'), ('second', 'column')):
        sequence, _ = spectral_sequence(double, which)
        out[label] = sequence.to_dict()
    return JobResult(out)


def cmd_verify(job):
    category = _category(job)
    source, target = _pair(job, category)
    _over_field(source, 'verify')
    report = verify_theorem(source, target, job.degree)
    out = dict(report.to_dict(), command='verify')
    return JobResult(out, config.EXIT_OK if report.passed else config.EXIT_MISMATCH)


def cmd_random_suite(job):
    size = int(get_config('RANDOM_SUITE_SIZE'))
    runs, failed = [], []
    for seed in range(job.seed, job.seed + size):
        category, source, target = random_instance(seed)
        report = verify_theorem(source, target, job.degree)
        entry = {'seed': seed, 'category': category.name, 'coefficient': source.algebra.to_dict(),
                 'verdicts': report.verdicts}
        if not report.passed:
            failed.append(seed)
            entry['counterexample'] = {'category': dump_category(category),
                                       'F': dump_diagram(source), 'G': dump_diagram(target),
                                       'mismatches': report.mismatches}
        runs.append(entry)
        logger.info("seed %d on %s: %s", seed, category.name, 'PASS' if report.passed else 'FAIL')
    return JobResult({'command': 'random-suite', 'N': job.degree, 'runs': runs, 'failed': failed},
                     config.EXIT_MISMATCH if failed else config.EXIT_OK)


HANDLERS = {
    'validate': cmd_validate,
    'limits': cmd_limits,
    'bw': cmd_bw,
    'hochschild-mitchell': cmd_hochschild_mitchell,
    'ext': cmd_ext,
    'specseq': cmd_specseq,
    'verify': cmd_verify,
    'random-suite': cmd_random_suite,
}


def run(job):
    """Run one job and write its report; returns the exit status."""
    logger.info("%s: input=%s F=%s G=%s N=%d", job.command, job.input, job.diagram_f,
                job.diagram_g, job.degree)
    try:
        result = HANDLERS[job.command](job)
    except InputError as exc:
        logger.error("%s", exc)
        result = JobResult({'command': job.command, 'error': str(exc)}, config.EXIT_INPUT_ERROR)
    except (CompositionNonzero, CrossCheckFailed) as exc:
        logger.error("%s: internal check failed: %s", job.command, exc)
        result = JobResult({'command': job.command, 'error': str(exc)}, config.EXIT_MISMATCH)
    text = render(result.report, job.format)
    if job.out:
        with open(job.out, 'w', encoding='utf-8') as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    logger.info("%s finished with status %d", job.command, result.status)
    return result.status


def build_parser():
    parser = argparse.ArgumentParser(
        prog='catext',
        description="Cohomology of finite categories and Ext in functor categories.",
    )
    parser.add_argument('command', choices=COMMANDS)
    parser.add_argument('--input', help="category JSON file")
    parser.add_argument('--diagram-f', dest='diagram_f', help="diagram JSON file for F")
    parser.add_argument('--diagram-g', dest='diagram_g', help="diagram JSON file for G")
    parser.add_argument('--coeff', help="'p,m' or 'Z'; overrides the diagram files")
    parser.add_argument('--degree', type=int, help="truncation degree N")
    parser.add_argument('--seed', type=int)
    parser.add_argument('--out', help="report path (default: stdout)")
    parser.add_argument('--format', choices=('json', 'table'))
    parser.add_argument('--log-level', dest='log_level',
                        choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'))
    return parser


def job_from_args(args):
    update_config_with_settings({
        'FORMAT': args.format, 'OUT': args.out, 'DEGREE': args.degree,
        'SEED': args.seed, 'COEFFICIENT': args.coeff, 'LOG_LEVEL': args.log_level,
    })
    coefficient = get_config('COEFFICIENT')
    return JobSpec(
        command=args.command,
        input=args.input,
        diagram_f=args.diagram_f,
        diagram_g=args.diagram_g,
        coefficient=CoeffAlgebra.parse(coefficient) if coefficient else None,
        degree=int(get_config('DEGREE', SETTINGS['DEGREE'])),
        seed=int(get_config('SEED', SETTINGS['SEED'])),
        out=get_config('OUT'),
        format=get_config('FORMAT', SETTINGS['FORMAT']),
    )


def main(argv=None, environ=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level or SETTINGS['LOG_LEVEL']),
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )
    try:
        reload_config(environ)
        job = job_from_args(args)
    except InputError as exc:
        logger.error("%s", exc)
        sys.stderr.write(f"error: {exc}\n")
        return config.EXIT_INPUT_ERROR
    return run(job)
