"""phorma core package.

Keeping `src` as a package lets us run entrypoints like:

  python -m src.cli stats --builtin L:7:5 --table
"""
