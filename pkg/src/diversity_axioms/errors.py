"""Exception hierarchy.

Validation problems derive from ``ValidationError`` (itself a ``ValueError``)
so callers can catch a single class at an input boundary.
"""


class DiversityError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(DiversityError, ValueError):
    pass


class NotSquare(ValidationError):
    def __init__(self, shape):
        self.shape = tuple(shape)
        super().__init__(f"matrix is not square: shape {self.shape}")


class NegativeEntry(ValidationError):
    def __init__(self, i, j, value):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"negative distance d[{i},{j}] = {value!r}")


class AsymmetricEntry(ValidationError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"asymmetric entries at ({i},{j}) and ({j},{i})")


# similarity-matrix spelling of the same failure
Asymmetric = AsymmetricEntry


class InconsistentDuplicate(ValidationError):
    def __init__(self, i, j, k):
        self.i, self.j, self.k = i, j, k
        super().__init__(
            f"d[{i},{j}] = 0 but d[{i},{k}] != d[{j},{k}]: zero distance "
            "must imply identical distances to every other element"
        )


class DiagonalNotOne(ValidationError):
    def __init__(self, i, value):
        self.i, self.value = i, value
        super().__init__(f"similarity diagonal s[{i},{i}] = {value!r}, expected 1")


class NotPSD(ValidationError):
    def __init__(self, min_eigenvalue):
        self.min_eigenvalue = float(min_eigenvalue)
        super().__init__(
            f"matrix is not positive semi-definite (min eigenvalue {self.min_eigenvalue:.6g})"
        )


class InvalidPoints(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, line, reason=""):
        self.line = line
        msg = f"parse error at line {line}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class NTooSmall(ValidationError):
    def __init__(self, n, minimum):
        self.n, self.minimum = n, minimum
        super().__init__(f"collection size n={n} is below the minimum {minimum}")


class InvalidOrder(ValidationError):
    def __init__(self, q):
        self.q = q
        super().__init__(f"Species order must satisfy q >= 0 and q != 1, got {q!r}")


class InstanceTooLarge(DiversityError):
    def __init__(self, n, n_max):
        self.n, self.n_max = n, n_max
        super().__init__(f"instance size n={n} exceeds the exact-solver limit n_max={n_max}")


class NoConvergence(DiversityError):
    def __init__(self, iterations):
        self.iterations = iterations
        super().__init__(f"Jacobi eigensolver did not converge after {iterations} sweeps")


class NoIntegerSolution(DiversityError):
    pass


class UnknownCase(DiversityError, KeyError):
    def __init__(self, case_id):
        self.case_id = case_id
        super().__init__(case_id)

    def __str__(self):
        return f"unknown registry case {self.case_id!r}"


class UnknownMeasure(DiversityError, KeyError):
    def __init__(self, name):
        self.name = name
        super().__init__(name)

    def __str__(self):
        return f"unknown measure {self.name!r}"
