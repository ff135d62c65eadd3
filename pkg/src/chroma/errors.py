class CapExceeded(RuntimeError):
    """A configured resource cap was hit; the computation did not finish."""

    def __init__(self, resource: str, cap: int, reached=None, detail: str = ""):
        self.resource = resource
        self.cap = cap
        self.reached = reached
        msg = f"{resource} cap {cap} exceeded"
        if reached is not None:
            msg += f" (reached {reached})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
