"""Exception types shared across the package.

Each class carries an ``exit_code`` so the command line front end can map
failures to its stable exit statuses without a lookup table of its own.
"""


class RackcohError(Exception):
    exit_code = 1


class ParseError(RackcohError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class InvalidTableError(RackcohError):
    """A table violates the rack/quandle axioms."""

    exit_code = 3

    def __init__(self, reason, witness=()):
        self.reason = reason
        self.witness = tuple(witness)
        super().__init__(f"{reason} {self.witness}" if witness else reason)


class NotIndecomposableError(RackcohError):
    exit_code = 3


class NotACocycleError(RackcohError):
    exit_code = 3

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"cocycle condition fails at (x, y, z) = {witness}")


class ClassTooLargeError(RackcohError):
    exit_code = 5


class CapExceededError(RackcohError):
    """Coset enumeration needed more than ``max_cosets`` live cosets."""

    exit_code = 5

    def __init__(self, max_cosets):
        self.max_cosets = max_cosets
        super().__init__(f"coset enumeration exceeded max_cosets={max_cosets}")


class TooLargeError(RackcohError):
    """Input is above the configured size cap of the homology oracle."""

    exit_code = 5


class InvalidParamsError(RackcohError):
    exit_code = 4


class NoGoodTransversalError(RackcohError):
    """No coset transversal of N_0 in N_X is closed under conjugation by x_0.

    ``coset`` is the coset index (equivalently the point sigma_j > x_0) that
    cannot be repaired: ``x_0``-conjugation maps the coset to itself, yet no
    element of it commutes with the relevant power of ``x_0``.
    """

    exit_code = 3

    def __init__(self, coset, point):
        self.coset = coset
        self.point = point
        super().__init__(
            f"no good coset decomposition: coset {coset} (point {point}) has no "
            "representative fixed by conjugation with the base point"
        )


class InconsistencyError(RackcohError):
    """An internal consistency check failed; indicates a bug."""

    exit_code = 1
