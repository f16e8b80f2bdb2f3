from typing import Optional


# Base for failures while reading or analysing motion capture data.
class MocapError(Exception):
    pass


class TrajectoryParseError(MocapError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DuplicateSampleError(TrajectoryParseError):
    pass


class InsufficientMarkersError(MocapError):
    def __init__(self, message: str, missing_ids: list[str] = None):
        super().__init__(message)
        self.missing_ids = list(missing_ids or [])


class InsufficientDataError(MocapError):
    pass
