"""Exception types shared across the package."""


class SubtorusError(Exception):
    pass


class InputError(SubtorusError, ValueError):
    """Malformed input: unknown letters, basis mismatch, bad parameters."""


class ResourceExceeded(SubtorusError):
    """A word or graph grew past its configured cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what} size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class NotMember(SubtorusError):
    pass


class NonInjective(InputError):
    pass


class VerificationFailed(SubtorusError):
    """A witness clause did not check out. ``clause`` names which one."""

    def __init__(self, clause, detail=""):
        super().__init__(f"{clause}: {detail}" if detail else clause)
        self.clause = clause
        self.detail = detail
