"""Exception hierarchy."""


class SchwarzKitError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SchwarzKitError, ValueError):
    """An argument lies outside the region where the operation is defined."""


class CertificationFailed(SchwarzKitError):
    """Sampling found a point where a supposed self-map leaves the disc."""

    def __init__(self, point, modulus):
        self.point = point
        self.modulus = modulus
        super().__init__(f"|f({point:.6g})| = {modulus:.12g} exceeds 1")


class CertificationMissing(SchwarzKitError):
    """A verifier that assumes a self-map received an uncertified function."""


class NonConvergent(SchwarzKitError):
    """Radial extrapolants did not settle."""


class NotUnimodularLimit(SchwarzKitError):
    pass


class NotOriginFixing(SchwarzKitError):
    pass


class NotNonnegative(SchwarzKitError):
    pass


class NotVanishingAtP(SchwarzKitError):
    pass


class CollarHypothesisViolated(SchwarzKitError):
    pass


class NotPSD(SchwarzKitError):
    pass


class DegenerateLine(SchwarzKitError):
    pass


class NonzeroConstantTerm(SchwarzKitError):
    pass


class LinearPartNotIdentity(SchwarzKitError):
    pass


class ConstantDisc(SchwarzKitError):
    pass
