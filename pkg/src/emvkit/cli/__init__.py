"""Command-line interface and JSON document formats."""
from .main import main

__all__ = ["main"]
