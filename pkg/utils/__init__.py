# locgen utils package
from .errors import ExitCode, LocgenError

__all__ = ["ExitCode", "LocgenError"]
