"""Allow ``python -m pensim`` as an alias for the console script."""

from .cli import entrypoint

entrypoint()
