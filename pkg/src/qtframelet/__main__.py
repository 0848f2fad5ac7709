"""Entry point for ``python -m qtframelet``."""

from .cli import main

main()
