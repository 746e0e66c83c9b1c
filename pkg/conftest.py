import os
import sys

# Make `src`, `config` and `settings` importable from the tests
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
