"""Exception hierarchy shared across the package."""


class FSLZError(ValueError):
    """Base class for every error raised by fslz."""


class ContainerError(FSLZError):
    """The container bytes or parameter block are malformed."""


class BadMagicError(ContainerError):
    def __init__(self, found: bytes):
        super().__init__(f"bad magic: {found!r}")
        self.found = found


class UnsupportedVersionError(ContainerError):
    def __init__(self, version: int):
        super().__init__(f"unknown version: {version}")
        self.version = version


class TruncatedPayloadError(ContainerError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"truncated payload: expected {expected} bytes, got {got}")
        self.expected = expected
        self.got = got


class DecodeError(FSLZError):
    """A compressed stream could not be decoded (corruption or desync)."""


class PayloadExhaustedError(DecodeError):
    pass
