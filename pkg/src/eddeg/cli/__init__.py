"""
Command-line interface: ``eddeg degree | enumerate | nearest | certify``.

Usage:
    from eddeg.cli import main

    exit_code = main(["degree", "--model", "flag", "--n", "4", "--ks", "1,2"])
"""

from eddeg.cli.main import main

__all__ = ["main"]
