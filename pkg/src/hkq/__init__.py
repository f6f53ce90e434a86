"""hkq: exact cohomology rings, cores and cogenerators of hypertoric varieties."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("hkq")
except PackageNotFoundError:
    __version__ = "unknown"
