"""Exception hierarchy shared by all nlwave modules."""


class NLWaveError(Exception):
    """Base class for nlwave errors."""


class ConfigurationError(NLWaveError, ValueError):
    """Invalid user-supplied configuration.

    ``field`` names the offending key (dotted path for nested configs).
    """

    def __init__(self, message, field=None):
        self.field = field
        if field is not None and field not in message:
            message = f"{field}: {message}"
        super().__init__(message)


class NumericalStateError(NLWaveError, ArithmeticError):
    """A field or intermediate product became non-finite."""

    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)


class ContractViolation(NLWaveError, AssertionError):
    """Internal invariant broken; indicates a bug upstream, not bad input."""


class DomainError(NLWaveError, ValueError):
    """Analytic formula evaluated outside its domain."""


class EvanescentBandError(DomainError):
    """Wavenumber lies where the squared frequency is not positive."""

    def __init__(self, k, band_edge):
        self.k = k
        self.band_edge = band_edge
        edge = "none" if band_edge is None else f"{band_edge:.12g}"
        super().__init__(
            f"k={k:.12g} is outside the propagating band (omega^2 <= 0); band edge |k|={edge}"
        )
