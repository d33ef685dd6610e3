"""Monte Carlo inference for district-based multi-party elections."""

__version__ = "0.1.0"
