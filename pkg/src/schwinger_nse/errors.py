"""Exception types raised by the library."""


class DomainError(ValueError):
    """An argument lies outside the domain of the formula being evaluated."""


class GeometryError(DomainError):
    """Capacitor or field-region geometry violates a modelling assumption."""


class MaterialError(DomainError):
    """Unphysical material constants (eps_r < 1, mu_r <= 0, E_b <= 0)."""


class ModelValidityError(DomainError):
    """Inputs push a first-order model outside its range of validity."""


class UndefinedPhaseError(DomainError):
    """A spinor component vanishes, so the relative phase is undefined."""


class MaterialParseError(ValueError):
    """A material file could not be parsed."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)
