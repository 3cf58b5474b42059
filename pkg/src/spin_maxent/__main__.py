"""Entry point for running spin-maxent as a module."""

from spin_maxent.cli import main

if __name__ == "__main__":
    main()
