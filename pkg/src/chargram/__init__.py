"""chargram: character n-gram search and text mining over suffix trees."""

__version__ = "0.1.0"
