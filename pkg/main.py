"""Root entry point: ``python main.py <command> ...`` is ``python -m src.cli <command> ...``."""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
