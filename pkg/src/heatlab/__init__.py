"""Heat-trace asymptotics for magnetic and Aharonov-Bohm model spectra."""

from . import asymptotics, errors, heattrace, specfun, spectra, verify

__all__ = ["asymptotics", "errors", "heattrace", "specfun", "spectra", "verify"]
__version__ = "0.1.0"
