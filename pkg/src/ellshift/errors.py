"""Exception hierarchy. Every error carries a stable machine-readable ``code``."""


class EllShiftError(Exception):
    code = "error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class DivisionByZero(EllShiftError, ZeroDivisionError):
    code = "division_by_zero"


class PrecisionExhausted(EllShiftError):
    code = "precision_exhausted"


class RootOutsideField(EllShiftError):
    code = "root_outside_field"

    def __init__(self, message, polynomial=None):
        super().__init__(message)
        self.polynomial = polynomial

    def to_json(self):
        out = super().to_json()
        if self.polynomial is not None:
            out["polynomial"] = str(self.polynomial)
        return out


class Inconclusive(EllShiftError):
    code = "inconclusive"


class NotPrincipal(EllShiftError):
    code = "not_principal"


class ExtensionRequired(EllShiftError):
    code = "extension_required"

    def __init__(self, message, minpoly=None):
        super().__init__(message)
        self.minpoly = minpoly

    def to_json(self):
        out = super().to_json()
        if self.minpoly is not None:
            out["minpoly"] = str(self.minpoly)
        return out


class PositiveDimensionalVariety(EllShiftError):
    code = "positive_dimensional_variety"


class CombinationOverflow(EllShiftError):
    code = "combination_overflow"


class SchemaError(EllShiftError):
    code = "schema_error"


class TorsionShift(EllShiftError):
    code = "torsion_shift"


class PointNotOnCurve(EllShiftError):
    code = "point_not_on_curve"
