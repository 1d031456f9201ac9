"""
Main entry point for pathhom.
Usage: python main.py <info|smoves|basis|homology|cochain|verify-paper> [options]
"""

import sys

from pathhom.cli import main

if __name__ == "__main__":
    sys.exit(main())
