import os
import sys

# Add project root to path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli.jobs import main


if __name__ == '__main__':
    sys.exit(main())
