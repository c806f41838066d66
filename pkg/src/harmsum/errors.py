"""Exception hierarchy shared by every module in the package.

All domain errors derive from HarmsumError so callers can catch the whole
family at once.  The CLI maps these onto process exit codes; see cli.py.
"""


class HarmsumError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(HarmsumError):
    """A statement or sum was requested with parameters outside its domain."""


class NotInvertible(HarmsumError):
    """An element had a common factor with the modulus during inversion."""

    def __init__(self, value: int, modulus: int, common: int):
        self.value = value
        self.modulus = modulus
        self.common = common
        super().__init__(
            f"{value} is not invertible mod {modulus} (gcd = {common})"
        )


class NonCoprimeModuli(HarmsumError):
    """CRT was asked to combine residues whose moduli share a factor."""

    def __init__(self, m1: int, m2: int, common: int):
        self.moduli = (m1, m2)
        self.common = common
        super().__init__(
            f"moduli {m1} and {m2} share the factor {common}"
        )


class PoleAtIndex(HarmsumError):
    """A Bernoulli number has the requested modulus in its denominator.

    By von Staudt-Clausen this happens at even index k > 0 exactly for the
    primes p with (p - 1) | k.  ``primes`` lists every offending prime of
    the modulus, ``index`` is k.
    """

    def __init__(self, index: int, primes):
        self.index = index
        self.primes = tuple(primes)
        plist = ", ".join(str(p) for p in self.primes)
        super().__init__(
            f"B_{index} has a pole at prime(s) {plist}: (p - 1) divides {index}"
        )


class CapExceeded(HarmsumError):
    """A computation was requested beyond its configured size limit."""

    def __init__(self, what: str, requested: int, cap: int):
        self.what = what
        self.requested = requested
        self.cap = cap
        super().__init__(f"{what}: requested {requested} exceeds cap {cap}")


class UnsupportedFilter(HarmsumError):
    """The fast evaluator cannot handle the requested parity filter."""


class ModulusMismatch(HarmsumError):
    """Arithmetic attempted between residues of different moduli."""

    def __init__(self, m1: int, m2: int):
        self.moduli = (m1, m2)
        super().__init__(f"residues have different moduli: {m1} vs {m2}")
