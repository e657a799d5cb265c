"""HTTP sidecar exposing OCR, text-type and icon classification endpoints."""

__version__ = "0.1.0"
