"""lptlab: exact verification laboratory for longest path transversals."""

__version__ = "0.1.0"
