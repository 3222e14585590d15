"""Main entry point for HypHarm."""

import sys

from HypHarm.app import main

if __name__ == "__main__":
    sys.exit(main())
