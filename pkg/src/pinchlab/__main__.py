"""Entry point for running pinchlab as a module."""

from .cli import main

if __name__ == "__main__":
    main()
