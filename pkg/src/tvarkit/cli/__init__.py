"""Command line front end and instance file format."""
from .main import main, run

__all__ = ["main", "run"]
