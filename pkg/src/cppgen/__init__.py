"""Contextual privacy policy generation for mobile app screenshots."""

__version__ = "0.1.0"
