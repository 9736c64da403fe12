"""
laurent.py
----------
Scalar Laurent polynomials evaluated on the unit circle z = e^{i theta}.

Coefficients are stored densely as c_{-n}, ..., c_n (offset k + n) in an
immutable complex128 array. All operations are pure.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridTooCoarse


TRIM_THRESHOLD = 1e-300
SAMPLING_FACTOR = 4


@dataclass(frozen=True)
class CirclePredicateReport:
    """Result of classify(); see classify() for max_deviation."""
    is_real_on_circle: bool
    is_reciprocal: bool
    is_anti_reciprocal: bool
    max_deviation: float


class LaurentPolynomial:
    """
    Laurent polynomial sum_{k=-n}^{n} c_k z^k.

    Args:
        coeffs: 2n+1 complex coefficients ordered c_{-n}, ..., c_n
    """

    __slots__ = ('_coeffs',)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=np.complex128).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=np.complex128)
        if c.size % 2 == 0:
            raise DomainError(f"Laurent coefficient list needs odd length, got {c.size}")
        c.setflags(write=False)
        self._coeffs = c

    # =========================================================================
    # Constructors
    # =========================================================================

    @classmethod
    def zero(cls) -> 'LaurentPolynomial':
        return cls([0.0])

    @classmethod
    def constant(cls, value) -> 'LaurentPolynomial':
        return cls([value])

    @classmethod
    def monomial(cls, power: int, value=1.0) -> 'LaurentPolynomial':
        """value * z^power."""
        n = abs(int(power))
        c = np.zeros(2 * n + 1, dtype=np.complex128)
        c[n + power] = value
        return cls(c)

    # =========================================================================
    # Accessors
    # =========================================================================

    @property
    def degree(self) -> int:
        return (self._coeffs.size - 1) // 2

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only view of c_{-n}, ..., c_n."""
        return self._coeffs

    def coeff(self, power: int) -> complex:
        """Coefficient of z^power (zero outside the support)."""
        n = self.degree
        if abs(power) > n:
            return 0j
        return complex(self._coeffs[n + power])

    def is_zero(self) -> bool:
        return not np.any(self._coeffs)

    def pad(self, degree: int) -> 'LaurentPolynomial':
        """Same polynomial stored with a (not smaller) degree."""
        n = self.degree
        if degree < n:
            raise DomainError(f"Cannot pad degree {n} polynomial down to {degree}")
        if degree == n:
            return self
        extra = degree - n
        return LaurentPolynomial(np.pad(self._coeffs, (extra, extra)))

    def normalized(self) -> 'LaurentPolynomial':
        """Trim symmetric outer coefficient pairs with modulus <= 1e-300."""
        c = self._coeffs
        lo, hi = 0, c.size - 1
        while hi - lo >= 2 and abs(c[lo]) <= TRIM_THRESHOLD and abs(c[hi]) <= TRIM_THRESHOLD:
            lo += 1
            hi -= 1
        if lo == 0:
            return self
        return LaurentPolynomial(c[lo:hi + 1])

    # =========================================================================
    # Arithmetic
    # =========================================================================

    def __add__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial.constant(other)
        n = max(self.degree, other.degree)
        return LaurentPolynomial(self.pad(n)._coeffs + other.pad(n)._coeffs)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(-self._coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentPolynomial) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPolynomial):
            return product(self, other)
        return LaurentPolynomial(self._coeffs * other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        n = max(self.degree, other.degree)
        return bool(np.array_equal(self.pad(n)._coeffs, other.pad(n)._coeffs))

    __hash__ = None

    def __repr__(self):
        return f"LaurentPolynomial(degree={self.degree})"


# =============================================================================
# Operations
# =============================================================================

def theta_grid(points: int) -> np.ndarray:
    """Uniform grid 2*pi*j/points, j = 0..points-1."""
    return 2.0 * np.pi * np.arange(points) / points


def cosine_theta_grid(points: int) -> np.ndarray:
    """Angles of the Chebyshev nodes x_j = cos(pi*(j + 1/2)/points)."""
    return np.pi * (np.arange(points) + 0.5) / points


def eval_on_circle(p: LaurentPolynomial, theta):
    """
    Evaluate p(e^{i theta}) by nested multiplication in z and 1/z.

    Args:
        p: polynomial
        theta: scalar or array of angles in radians

    Returns:
        complex scalar, or complex array shaped like theta
    """
    theta_arr = np.asarray(theta, dtype=float)
    z = np.exp(1j * theta_arr)
    zinv = np.conj(z)
    c = p.coeffs
    n = p.degree

    pos = np.full(theta_arr.shape, c[2 * n], dtype=np.complex128)
    for k in range(n - 1, -1, -1):
        pos = pos * z + c[n + k]

    if n > 0:
        neg = np.full(theta_arr.shape, c[0], dtype=np.complex128)
        for k in range(n - 1, 0, -1):
            neg = neg * zinv + c[n - k]
        pos = pos + neg * zinv

    if np.ndim(theta) == 0:
        return complex(pos)
    return pos


def sample_on_circle(p: LaurentPolynomial, grid_points: int) -> np.ndarray:
    """
    Values of p on theta_grid(grid_points).

    Uses one inverse FFT when the grid resolves every frequency, nested
    evaluation otherwise.
    """
    n = p.degree
    if grid_points < 2 * n + 1:
        return eval_on_circle(p, theta_grid(grid_points))
    buf = np.zeros(grid_points, dtype=np.complex128)
    np.add.at(buf, np.arange(-n, n + 1) % grid_points, p.coeffs)
    return np.fft.ifft(buf) * grid_points


def product(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    """Coefficient convolution; result degree is deg p + deg q."""
    return LaurentPolynomial(np.convolve(p.coeffs, q.coeffs))


def star(p: LaurentPolynomial) -> LaurentPolynomial:
    """The involution c_k -> conj(c_{-k}); conjugation on the circle."""
    return LaurentPolynomial(np.conj(p.coeffs[::-1]))


def classify(p: LaurentPolynomial, tol: float) -> CirclePredicateReport:
    """
    Test the three coefficient symmetries within tol (l-infinity).

    max_deviation is the largest deviation among the predicates that hold,
    or the smallest deviation when none holds (distance to the nearest
    class).
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    c = p.coeffs
    rev = c[::-1]
    dev_rec = float(np.max(np.abs(c - rev)))
    dev_anti = float(np.max(np.abs(c + rev)))
    dev_real = float(np.max(np.abs(c - np.conj(rev))))

    checks = [(dev_real <= tol, dev_real),
              (dev_rec <= tol, dev_rec),
              (dev_anti <= tol, dev_anti)]
    passing = [dev for ok, dev in checks if ok]
    max_dev = max(passing) if passing else min(dev for _, dev in checks)

    return CirclePredicateReport(
        is_real_on_circle=checks[0][0],
        is_reciprocal=checks[1][0],
        is_anti_reciprocal=checks[2][0],
        max_deviation=max_dev,
    )


def from_chebyshev(kind1=(), kind2sin=()) -> LaurentPolynomial:
    """
    Map a Chebyshev sum in x = cos(theta) to its Laurent polynomial.

    sum a_k T_k(x) + sum b_k sin(theta) U_{k-1}(x)
        = sum a_k (z^k + z^-k)/2 + sum b_k (z^k - z^-k)/(2i)

    Args:
        kind1: a_0, a_1, ... (a_0 maps to the constant term)
        kind2sin: b_0, b_1, ... (b_0 is ignored, sin(theta) U_{-1} = 0)
    """
    a = np.asarray(kind1, dtype=float).ravel()
    b = np.asarray(kind2sin, dtype=float).ravel()
    n = max(a.size - 1, b.size - 1, 0)
    c = np.zeros(2 * n + 1, dtype=np.complex128)

    if a.size:
        c[n] += a[0]
        k = np.arange(1, a.size)
        c[n + k] += a[1:] / 2
        c[n - k] += a[1:] / 2
    if b.size > 1:
        k = np.arange(1, b.size)
        c[n + k] += b[1:] / 2j
        c[n - k] -= b[1:] / 2j

    return LaurentPolynomial(c).normalized()


def linf_on_circle(p: LaurentPolynomial, grid_points: int) -> float:
    """
    Sampled sup-norm on a uniform theta grid (an estimate, not a bound).

    Raises:
        GridTooCoarse: grid_points < 4*(deg p + 1)
    """
    needed = SAMPLING_FACTOR * (p.degree + 1)
    if grid_points < needed:
        raise GridTooCoarse(
            f"{grid_points} grid points cannot sample degree {p.degree}; need at least {needed}"
        )
    if p.is_zero():
        return 0.0
    return float(np.max(np.abs(sample_on_circle(p, grid_points))))
