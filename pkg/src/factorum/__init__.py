"""Maximum-weight general factors with interval, parity and type-1/type-2
degree constraints."""

__version__ = "0.1.0"
