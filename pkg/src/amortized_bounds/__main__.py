"""Entry point for running amortized_bounds as a module."""

import sys

from amortized_bounds.cli import main

if __name__ == "__main__":
    sys.exit(main())
