"""Reed-Solomon code over GF(2^m): evaluation encoding and
errors-and-erasures decoding.

The evaluation points are all of F_q* in generator-power order
(alpha^0, alpha^1, ..., alpha^(q-2)), so the block length is always
n = q - 1.  Decoding corrects e symbol errors and t erasures whenever
2e + t < n - k + 1, via Berlekamp-Welch rational interpolation restricted
to the unerased positions.
"""

from __future__ import annotations

from .gf2m import GF2m


class DecodeFailure(Exception):
    """No codeword within the guaranteed error/erasure radius."""


class ReedSolomonCode:
    """[n, k] Reed-Solomon code with n = q - 1 over the given field."""

    def __init__(self, field: GF2m, k: int):
        n = field.order - 1
        if not 1 <= k < n:
            raise ValueError(f"message length must satisfy 1 <= k < {n}, got {k}")
        self.field = field
        self.n = n
        self.k = k
        self.points = [field.alpha_pow(i) for i in range(n)]

    @property
    def distance(self) -> int:
        return self.n - self.k + 1

    @property
    def relative_distance(self) -> float:
        return (self.n - self.k + 1) / self.n

    def encode(self, message) -> list[int]:
        """Evaluate the polynomial with coefficients `message` at all points."""
        message = list(message)
        if len(message) != self.k:
            raise ValueError(f"expected {self.k} message symbols, got {len(message)}")
        gf = self.field
        out = []
        for x in self.points:
            acc = 0
            for c in reversed(message):  # Horner, highest degree first
                acc = gf.mul(acc, x) ^ c
            out.append(acc)
        return out

    def decode(self, received) -> list[int]:
        """Decode a length-n list of symbols, None marking an erasure.

        Returns the k message coefficients.  Raises DecodeFailure when no
        codeword satisfies 2e + t < n - k + 1 against the received word.
        """
        received = list(received)
        if len(received) != self.n:
            raise ValueError(f"expected {self.n} symbols, got {len(received)}")
        gf = self.field
        keep = [i for i, s in enumerate(received) if s is not None]
        t = self.n - len(keep)
        e_max = (self.n - self.k - t) // 2
        if e_max < 0:
            raise DecodeFailure(f"{t} erasures exceed the distance budget")

        # Unknowns: Q of degree < e_max + k, and monic E of degree e_max.
        # For each unerased point: Q(x_i) - y_i * E(x_i) = 0, i.e.
        #   sum_v Q_v x_i^v + y_i * sum_{u<e_max} E_u x_i^u = y_i * x_i^e_max.
        nq = e_max + self.k
        rows = []
        rhs = []
        for i in keep:
            x = self.points[i]
            y = received[i]
            powers = [1] * nq
            for v in range(1, nq):
                powers[v] = gf.mul(powers[v - 1], x)
            row = powers + [gf.mul(y, powers[u]) for u in range(e_max)]
            rows.append(row)
            rhs.append(gf.mul(y, gf.pow(x, e_max)))
        solution = _solve_gf2m(gf, rows, rhs)
        if solution is None:
            raise DecodeFailure("interpolation system is inconsistent")
        q_poly = solution[:nq]
        e_poly = solution[nq:] + [1]  # monic

        message, rem = _poly_divmod(gf, q_poly, e_poly)
        if any(rem):
            raise DecodeFailure("error locator does not divide the interpolant")
        message = message[: self.k] + [0] * (self.k - len(message))

        codeword = self.encode(message)
        errors = sum(1 for i in keep if codeword[i] != received[i])
        if 2 * errors + t >= self.distance:
            raise DecodeFailure("no codeword within the correction radius")
        return message


def _solve_gf2m(gf: GF2m, rows: list[list[int]], rhs: list[int]):
    """Gaussian elimination over GF(2^m); free variables are set to 0.

    Returns None when the (possibly overdetermined) system is inconsistent.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    a = [list(r) for r in rows]
    b = list(rhs)
    pivot_of_col = [-1] * ncols
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if a[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        b[rank], b[pivot] = b[pivot], b[rank]
        inv = gf.inv(a[rank][col])
        a[rank] = [gf.mul(inv, v) for v in a[rank]]
        b[rank] = gf.mul(inv, b[rank])
        for r in range(nrows):
            if r != rank and a[r][col]:
                f = a[r][col]
                a[r] = [a[r][c] ^ gf.mul(f, a[rank][c]) for c in range(ncols)]
                b[r] = b[r] ^ gf.mul(f, b[rank])
        pivot_of_col[col] = rank
        rank += 1
        if rank == nrows:
            break
    for r in range(rank, nrows):
        # rows below the rank are zero in every column after elimination
        if b[r]:
            return None
    solution = [0] * ncols
    for col in range(ncols):
        r = pivot_of_col[col]
        if r >= 0:
            acc = b[r]
            for c in range(col + 1, ncols):
                if a[r][c] and solution[c]:
                    acc ^= gf.mul(a[r][c], solution[c])
            solution[col] = acc
    return solution


def _poly_divmod(gf: GF2m, num: list[int], den: list[int]):
    """Polynomial long division; coefficients lowest degree first."""
    num = list(num)
    while den and den[-1] == 0:
        den = den[:-1]
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    deg_d = len(den) - 1
    lead_inv = gf.inv(den[-1])
    quot = [0] * max(1, len(num) - deg_d)
    rem = list(num)
    for pos in range(len(num) - 1, deg_d - 1, -1):
        coeff = gf.mul(rem[pos], lead_inv)
        quot[pos - deg_d] = coeff
        if coeff:
            for u in range(deg_d + 1):
                rem[pos - deg_d + u] ^= gf.mul(coeff, den[u])
    return quot, rem[:deg_d] if deg_d else []
