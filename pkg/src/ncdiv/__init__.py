"""Higher divergences, double brackets and ribbon graph operations over Q."""

__version__ = "0.1.0"
