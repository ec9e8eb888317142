from typing import Optional, Any


class AppError(Exception):
    """Base class for an App Error"""

    status_code: int
    exit_code: int = 3
    message: str
    payload: Optional[Any]

    def __init__(
        self,
        message: str,
        status_code: int,
        payload: Optional[Any] = None,
    ):
        super().__init__(message)
        self.message = message
        self.status_code = status_code
        self.payload = payload

    def to_dict(self):
        error_data = dict(self.payload or {})
        error_data["message"] = self.message
        error_data["status"] = "error"
        return error_data


class InputError(AppError):
    """Malformed input: bad generators, partitions, syntax or an invalid pair"""

    exit_code = 1

    def __init__(self, message: str, payload: Optional[Any] = None):
        super().__init__(message, 400, payload)


class ResourceLimitError(AppError):
    """A configured enumeration cap was exceeded"""

    exit_code = 2

    def __init__(self, message: str, payload: Optional[Any] = None):
        super().__init__(message, 413, payload)


class InternalAppError(AppError):
    """Internal Api Error"""

    exit_code = 3
    message: str
    payload: Optional[Any]

    def __init__(
        self,
        message: str,
        payload: Optional[Any] = None,
        code: int = 500,
    ):
        super().__init__(message, code, payload)


class InvariantViolation(InternalAppError):
    """A structural invariant failed; always a bug"""
