"""Exception types shared across the package."""


class SheetOpticsError(Exception):
    """Base class for all sheetoptics errors."""


class ContinuityViolation(SheetOpticsError):
    """Field envelope fails the continuity requirement at the surface."""


class DegenerateDecoupling(SheetOpticsError):
    """t + r or b vanishes: every relative phase decouples the two states."""


class SingularStack(SheetOpticsError):
    """The transfer-matrix linear system for a stack is numerically singular."""


class LedgerMismatch(SheetOpticsError):
    """Emission ledger entries do not align with the sheets of a stack."""


class AsymmetricGrid(SheetOpticsError):
    """Operation requires a grid that is mirror symmetric about x = 0."""
