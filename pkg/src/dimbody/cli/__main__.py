"""Entry point for python -m dimbody.cli."""

from dimbody.cli.app import main

if __name__ == "__main__":
    main()
