"""Exception hierarchy shared by every package."""


class CatExtError(Exception):
    pass


class InputError(CatExtError):
    """Bad input. The command line maps these to exit status 2."""


class ParseError(InputError):
    def __init__(self, path, field, message, line=None):
        self.path = path
        self.field = field
        self.line = line
        where = f"{path}"
        if line is not None:
            where += f":{line}"
        if field:
            where += f" [{field}]"
        super().__init__(f"{where}: {message}")


class InvalidCategory(InputError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"invalid category: {report.summary()}")


class InvalidDiagram(InputError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"invalid diagram: {report.summary()}")


class SizeGuardExceeded(InputError):
    def __init__(self, construction, size, bound):
        self.construction = construction
        self.size = size
        self.bound = bound
        super().__init__(
            f"{construction}: category has {size} morphisms, size guard is {bound}"
        )


class IncompatibleBase(InputError):
    pass


class CompositionNonzero(CatExtError):
    def __init__(self, shape_in, shape_out):
        super().__init__(
            f"d_out{shape_out} o d_in{shape_in} is not zero"
        )


class CrossCheckFailed(CatExtError):
    pass
