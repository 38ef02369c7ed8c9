"""Hand-rolled 3x3 linear algebra.

Everything here works on plain 3-tuples and 3x3 tuple-of-tuples so the same
code paths serve Fractions, floats, and complex floats.  The eigen and
singular value routines are float-only and deliberately specialized to the
3x3 case: a trigonometric Cardano solve with Newton polish, nullvectors from
row cross products, and a one-sided Jacobi sweep for singular values.  No
general-purpose eigensolver is used anywhere in the package.
"""

import cmath
import math

from .errors import IllConditioned

EIG_RESIDUAL_TOL = 1e-10


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def matvec(m, v):
    return (dot(m[0], v), dot(m[1], v), dot(m[2], v))


def transpose(m):
    return (
        (m[0][0], m[1][0], m[2][0]),
        (m[0][1], m[1][1], m[2][1]),
        (m[0][2], m[1][2], m[2][2]),
    )


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def det3(m):
    return dot(m[0], cross(m[1], m[2]))


def adjugate(m):
    """Transpose of the cofactor matrix; equals det(m) * inverse(m)."""
    mt = transpose(m)
    return (
        cross(mt[1], mt[2]),
        cross(mt[2], mt[0]),
        cross(mt[0], mt[1]),
    )


def mat_scale(m, c):
    return tuple(tuple(v * c for v in row) for row in m)


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def identity3():
    return ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))


def mat_float(m):
    return tuple(tuple(float(v) for v in row) for row in m)


def sup_norm(m):
    return max(abs(v) for row in m for v in row)


def sup_normalize(m):
    """Scale to sup norm 1 with the largest-|entry| made positive."""
    s = sup_norm(m)
    if s == 0.0:
        raise ValueError("zero matrix cannot be normalized")
    flat = [v for row in m for v in row]
    k = max(range(9), key=lambda i: abs(flat[i]))
    if flat[k] < 0:
        s = -s
    return tuple(tuple(v / s for v in row) for row in m)


def solve3(m, rhs):
    """Gaussian elimination with partial pivoting; exact when inputs are exact."""
    a = [list(row) + [r] for row, r in zip(m, rhs)]
    for col in range(3):
        piv = max(range(col, 3), key=lambda i: abs(a[i][col]))
        if a[piv][col] == 0:
            raise IllConditioned("singular system")
        a[col], a[piv] = a[piv], a[col]
        for i in range(3):
            if i != col and a[i][col] != 0:
                f = a[i][col] / a[col][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return tuple(a[i][3] / a[i][i] for i in range(3))


def char_coeffs(m):
    """Coefficients (tr, second elementary symmetric, det) of the 3x3."""
    tr = m[0][0] + m[1][1] + m[2][2]
    s = (
        m[1][1] * m[2][2] - m[1][2] * m[2][1]
        + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[0][0] * m[1][1] - m[0][1] * m[1][0]
    )
    return tr, s, det3(m)


def cubic_roots(tr, s, d):
    """Roots of x^3 - tr x^2 + s x - d, trig Cardano, three-real aware."""
    # depressed cubic: x = y + tr/3, y^3 + p y + q = 0
    p = s - tr * tr / 3.0
    q = -2.0 * tr ** 3 / 27.0 + tr * s / 3.0 - d
    shift = tr / 3.0
    scale = max(abs(p), abs(q), 1e-300)
    if abs(p) / scale < 1e-14 and abs(q) / scale < 1e-14:
        return [shift, shift, shift]
    disc = -4.0 * p ** 3 - 27.0 * q * q
    if disc >= -1e-13 * scale ** 2 * max(scale, 1.0):
        # three real roots (or a near-double); trigonometric form
        p3 = max(-p / 3.0, 1e-300)
        r = 2.0 * math.sqrt(p3)
        arg = 3.0 * q / (p * r) if p != 0 else 0.0
        arg = min(1.0, max(-1.0, arg))
        theta = math.acos(arg)
        return [
            shift + r * math.cos((theta + 2.0 * math.pi * k) / 3.0)
            for k in range(3)
        ]
    # one real root, complex pair
    half = -q / 2.0
    root = cmath.sqrt(q * q / 4.0 + p ** 3 / 27.0)
    u = (half + root) ** (1.0 / 3.0)
    if abs(u) < 1e-300:
        u = (half - root) ** (1.0 / 3.0)
    v = -p / (3.0 * u) if abs(u) > 0 else 0.0
    y1 = u + v
    w = complex(-0.5, math.sqrt(3.0) / 2.0)
    y2 = u * w + v * w.conjugate()
    y3 = u * w.conjugate() + v * w
    roots = [y1 + shift, y2 + shift, y3 + shift]
    # the real root may carry a stray imaginary dust term
    roots = [r.real if abs(r.imag) < 1e-9 * (1.0 + abs(r)) else r for r in roots]
    return roots


def _polish_root(tr, s, d, x):
    """A few guarded Newton steps on the characteristic cubic.

    Near a multiple root the derivative vanishes and a raw step can fling
    the iterate far away, so a step is kept only when it shrinks |f|.
    """
    fx = abs(((x - tr) * x + s) * x - d)
    for _ in range(4):
        f = ((x - tr) * x + s) * x - d
        fp = (3.0 * x - 2.0 * tr) * x + s
        if abs(fp) < 1e-300:
            break
        step = f / fp
        cand = x - step
        fc = abs(((cand - tr) * cand + s) * cand - d)
        if fc >= fx:
            break
        x, fx = cand, fc
        if abs(step) < 1e-16 * (1.0 + abs(x)):
            break
    return x


def nullvector(m):
    """Unit vector spanning the (approximate) nullspace of a float 3x3.

    Uses the largest cross product of row pairs; falls back to a vector
    orthogonal to the dominant row when the rows are all near-parallel
    (rank 1), which is the elation case.
    """
    rows = [tuple(complex(v) for v in row) if any(isinstance(v, complex) for v in row)
            else row for row in m]
    best = None
    best_n = -1.0
    for i, j in ((0, 1), (0, 2), (1, 2)):
        c = cross(rows[i], rows[j])
        n = sum(abs(v) ** 2 for v in c)
        if n > best_n:
            best_n = n
            best = c
    row_scale = max(sum(abs(v) ** 2 for v in row) for row in rows)
    if best_n > 1e-24 * row_scale ** 2:
        nrm = math.sqrt(best_n)
        return tuple(v / nrm for v in best)
    # rank <= 1: nullspace is a plane; return the basis vector least
    # aligned with the dominant row, projected orthogonal to it
    r = max(rows, key=lambda row: sum(abs(v) ** 2 for v in row))
    rn = sum(abs(v) ** 2 for v in r)
    if rn == 0:
        return (1.0, 0.0, 0.0)
    k = min(range(3), key=lambda i: abs(r[i]))
    e = [0.0, 0.0, 0.0]
    e[k] = 1.0
    coef = (e[0] * r[0].conjugate() if isinstance(r[0], complex) else e[0] * r[0])
    coef = sum((x * (y.conjugate() if isinstance(y, complex) else y)) for x, y in zip(e, r)) / rn
    v = tuple(x - coef * y for x, y in zip(e, r))
    nrm = math.sqrt(sum(abs(x) ** 2 for x in v))
    return tuple(x / nrm for x in v)


def eig3(m):
    """Eigenpairs of a float real 3x3, sorted by descending modulus.

    Returns a list of (eigenvalue, eigenvector) with complex entries where
    needed.  Raises IllConditioned if a polished pair leaves a residual
    above EIG_RESIDUAL_TOL relative to the matrix scale.
    """
    m = mat_float(m)
    tr, s, d = char_coeffs(m)
    roots = cubic_roots(tr, s, d)
    roots = [_polish_root(tr, s, d, x) for x in roots]
    roots.sort(key=lambda z: -abs(z))
    scale = max(sup_norm(m), 1e-300)
    pairs = []
    for idx, lam in enumerate(roots):
        sep = min(abs(lam - mu) for j, mu in enumerate(roots) if j != idx)
        if isinstance(lam, complex):
            a = tuple(tuple(complex(v) for v in row) for row in m)
            shifted = tuple(
                tuple(a[i][j] - (lam if i == j else 0) for j in range(3))
                for i in range(3)
            )
        else:
            shifted = tuple(
                tuple(m[i][j] - (lam if i == j else 0.0) for j in range(3))
                for i in range(3)
            )
        vec = nullvector(shifted)
        res = matvec(shifted, vec)
        rnorm = math.sqrt(sum(abs(v) ** 2 for v in res))
        # clustered roots cannot pin their vector to float precision; the
        # direction error scales like noise over separation
        allowed = EIG_RESIDUAL_TOL * scale * 100
        if sep <= 1e-3 * scale:
            allowed = 1e-2 * scale
        if rnorm > EIG_RESIDUAL_TOL * scale * 100 and not isinstance(lam, complex):
            u_cols, sig, v_cols = svd3(shifted)
            alt = v_cols[2]
            alt_res = matvec(shifted, alt)
            alt_norm = math.sqrt(sum(abs(v) ** 2 for v in alt_res))
            if alt_norm < rnorm:
                vec, rnorm = alt, alt_norm
        if rnorm > allowed:
            raise IllConditioned(
                "eigenpair residual %.3e exceeds tolerance" % (rnorm / scale)
            )
        pairs.append((lam, vec))
    return pairs


def eig_residual(m, lam, vec):
    """Relative residual |Mv - lam v| / (|M| |v|)."""
    m = mat_float(m)
    mv = matvec(m, vec)
    diff = tuple(a - lam * b for a, b in zip(mv, vec))
    num = math.sqrt(sum(abs(v) ** 2 for v in diff))
    den = sup_norm(m) * math.sqrt(sum(abs(v) ** 2 for v in vec))
    return num / den if den > 0 else float("inf")


def svd3(m):
    """One-sided Jacobi SVD of a float real 3x3.

    Returns (u_cols, sigma, v_cols): sigma descending, u/v as column tuples.
    Columns of u for zero singular values are zero-filled.
    """
    a = [list(col) for col in transpose(mat_float(m))]  # a[j] = j-th column
    v = [[1.0 if i == j else 0.0 for i in range(3)] for j in range(3)]
    for _ in range(40):
        off = 0.0
        for p in range(3):
            for q in range(p + 1, 3):
                apq = sum(a[p][i] * a[q][i] for i in range(3))
                app = sum(x * x for x in a[p])
                aqq = sum(x * x for x in a[q])
                off = max(off, abs(apq) / math.sqrt(app * aqq) if app * aqq > 0 else 0.0)
                if apq == 0.0 or abs(apq) < 1e-18 * math.sqrt(app * aqq):
                    continue
                tau = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                sn = c * t
                for vecs in (a, v):
                    xp = vecs[p][:]
                    xq = vecs[q][:]
                    vecs[p] = [c * x - sn * y for x, y in zip(xp, xq)]
                    vecs[q] = [sn * x + c * y for x, y in zip(xp, xq)]
        if off < 1e-15:
            break
    sig = [math.sqrt(sum(x * x for x in col)) for col in a]
    order = sorted(range(3), key=lambda j: -sig[j])
    u_cols = []
    s_out = []
    v_cols = []
    for j in order:
        s_out.append(sig[j])
        v_cols.append(tuple(v[j]))
        if sig[j] > 0:
            u_cols.append(tuple(x / sig[j] for x in a[j]))
        else:
            u_cols.append((0.0, 0.0, 0.0))
    return tuple(u_cols), tuple(s_out), tuple(v_cols)


def singular_values(m):
    return svd3(m)[1]


def sv_ratio(m):
    """sigma2/sigma1, the numeric rank-1 test statistic."""
    s = singular_values(m)
    if s[0] == 0.0:
        return float("inf")
    return s[1] / s[0]
