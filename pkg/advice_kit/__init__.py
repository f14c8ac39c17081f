"""advice-kit: Type-2 computation with advice."""

from .constants import VERSION

__version__ = VERSION
