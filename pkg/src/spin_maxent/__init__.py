"""Maximum-entropy reconstruction of spin-1/2 density matrices."""

__version__ = "1.0.0"
