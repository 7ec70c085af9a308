#!/usr/bin/env python3
# gen_modular_data.py
# Regenerates the bundled exact data tables:
#   data/phi_N.txt      classical modular polynomials Phi_N, N = 1..5
#   data/class_polys.txt Hilbert class polynomials H_D for 0 < |D| <= 100
#
# Phi_N is computed exactly over Z from the integer q-expansion of j
# (E4^3 / Delta) by expanding prod (X - j((a*tau+b)/d)) over the primitive
# triples a*d = N, 0 <= b < d, with coefficients in Z[zeta_L].  Every table is
# re-verified before writing: the series identity Phi_N(j(q), j(q^N)) = 0,
# symmetry, the Kronecker congruence for prime N, and pinned spot values.
# Class polynomials are evaluated at high precision and rounded, with a strict
# rounding-error tolerance and class-number-one spot checks.

import math
import os
import sys
from fractions import Fraction

JTERMS = 64          # number of j coefficients kept (q^-1 .. q^(JTERMS-2))
QTRUNC = 6           # verify series remainders vanish up to q^QTRUNC

CYCLO = {
    1: [-1, 1],              # x - 1
    2: [1, 1],               # x + 1
    3: [1, 1, 1],            # x^2 + x + 1
    4: [1, 0, 1],            # x^2 + 1
    5: [1, 1, 1, 1, 1],      # x^4 + x^3 + x^2 + x + 1
}


def sigma3(n):
    s = 0
    for d in range(1, n + 1):
        if n % d == 0:
            s += d ** 3
    return s


def j_coefficients(terms):
    """Integer coefficients c_-1..c_(terms-2) of j = E4^3/Delta."""
    # E4 to q^(terms)
    e4 = [0] * (terms + 2)
    e4[0] = 1
    for n in range(1, terms + 2):
        e4[n] = 240 * sigma3(n)
    e43 = poly_mul_trunc(poly_mul_trunc(e4, e4, terms + 2), e4, terms + 2)
    # Delta / q = prod (1 - q^n)^24
    eta24 = [1] + [0] * (terms + 1)
    for n in range(1, terms + 2):
        factor = [0] * (terms + 2)
        factor[0] = 1
        if n < len(factor):
            factor[n] = -1
        for _ in range(24):
            eta24 = poly_mul_trunc(eta24, factor, terms + 2)
    inv = series_inverse(eta24, terms + 2)
    jq = poly_mul_trunc(e43, inv, terms + 2)  # this is q*j(q)
    assert jq[0] == 1 and jq[1] == 744 and jq[2] == 196884, jq[:3]
    return jq[: terms]  # index m holds coefficient of q^(m-1)


def poly_mul_trunc(a, b, n):
    out = [0] * n
    for i, ai in enumerate(a):
        if ai == 0 or i >= n:
            continue
        for j, bj in enumerate(b):
            if bj == 0 or i + j >= n:
                continue
            out[i + j] += ai * bj
    return out


def series_inverse(a, n):
    assert a[0] == 1
    inv = [0] * n
    inv[0] = 1
    for k in range(1, n):
        acc = 0
        for i in range(1, k + 1):
            if i < len(a) and a[i]:
                acc += a[i] * inv[k - i]
        inv[k] = -acc
    return inv


class Cyc:
    """Elements of Z[x]/Phi_L(x), stored as int tuples of length deg(Phi_L)."""

    def __init__(self, L):
        self.L = L
        self.mod = CYCLO[L]
        self.deg = len(self.mod) - 1
        # power table x^k reduced, for k = 0..L-1
        self.pow = []
        cur = [1] + [0] * (self.deg - 1) if self.deg > 0 else [1]
        for _ in range(L):
            self.pow.append(tuple(cur))
            cur = self._shift(cur)

    def _shift(self, v):
        out = [0] + list(v)
        if len(out) > self.deg:
            lead = out[self.deg]
            out = out[: self.deg]
            for i in range(self.deg):
                out[i] -= lead * self.mod[i]
        while len(out) < self.deg:
            out.append(0)
        return out

    def zero(self):
        return (0,) * max(self.deg, 1)

    def from_int(self, c):
        v = [0] * max(self.deg, 1)
        v[0] = c
        return tuple(v)

    def zeta_pow(self, k):
        if self.deg == 0:
            return (1,)
        return self.pow[k % self.L]

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def scale(self, a, c):
        return tuple(x * c for x in a)

    def mul(self, a, b):
        if self.deg == 0:
            return (a[0] * b[0],)
        out = [0] * (2 * self.deg)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
        for k in range(2 * self.deg - 1, self.deg - 1, -1):
            lead = out[k]
            if lead:
                for i in range(len(self.mod) - 1):
                    out[k - self.deg + i] -= lead * self.mod[i]
                out[k] = 0
        return tuple(out[: self.deg])

    def is_int(self, a):
        return all(x == 0 for x in a[1:])


def psi(n):
    out = n
    for p in {f for f in range(2, n + 1) if n % f == 0 and all(f % q for q in range(2, f))}:
        out = out * (p + 1) // p
    return out


def primitive_triples(n):
    triples = []
    for a in range(1, n + 1):
        if n % a:
            continue
        d = n // a
        for b in range(d):
            if math.gcd(math.gcd(a, b), d) == 1:
                triples.append((a, b, d))
    return triples


def compute_phi(n, jq):
    """Return dict (i, k) -> coeff of X^i Y^k of Phi_n, exact."""
    triples = primitive_triples(n)
    deg = psi(n)
    assert len(triples) == deg
    L = 1
    for _, _, d in triples:
        L = L * d // math.gcd(L, d)
    C = Cyc(L)
    # keep enough headroom above the final truncation: a factor with a deep
    # pole can pull high-order terms back below the final cut
    total_pole_w = sum(a * n // d for (a, _, d) in triples)
    wtrunc = QTRUNC * n + total_pole_w  # working bound on w-exponents, w = q^(1/n)

    def root_series(a, b, d):
        # j(zeta_d^b q^(a/d)) as {w-exponent: Cyc}
        out = {}
        step = a * n // d
        zstep = (L // d) * b
        for m in range(-1, len(jq) - 1):
            e = m * step
            if e > wtrunc:
                break
            c = jq[m + 1]
            if c:
                z = C.scale(C.zeta_pow(zstep * m), c)
                out[e] = C.add(out.get(e, C.zero()), z)
        return out

    def ser_mul(u, v):
        out = {}
        for eu, cu in u.items():
            for ev, cv in v.items():
                e = eu + ev
                if e > wtrunc:
                    continue
                p = C.mul(cu, cv)
                if any(p):
                    out[e] = C.add(out.get(e, C.zero()), p)
        return {e: c for e, c in out.items() if any(c)}

    def ser_sub(u, v):
        out = dict(u)
        for e, c in v.items():
            out[e] = C.add(out.get(e, C.zero()), C.scale(c, -1))
        return {e: c for e, c in out.items() if any(c)}

    # prod over roots of (X - r): list coeffs[i] = series coefficient of X^i
    coeffs = [dict()] * 0
    coeffs = [{0: C.from_int(1)}]  # polynomial "1"
    for (a, b, d) in triples:
        r = root_series(a, b, d)
        new = [dict() for _ in range(len(coeffs) + 1)]
        for i, ci in enumerate(coeffs):
            new[i + 1] = ser_sub(new[i + 1], ser_sub({}, ci))  # + ci
            new[i] = ser_sub(new[i], ser_mul(ci, r))           # - ci*r
        coeffs = new

    # convert each X^i coefficient to a polynomial in Y (= j)
    jpow = {0: {(-1) * 0: 0}}  # placeholder
    jser = {m - 1: jq[m] for m in range(len(jq)) if jq[m]}  # q-exponent -> int

    def jpower(k):
        # j^k as q-series, exact through q^QTRUNC (keep pole headroom while
        # powering: multiplying by j pulls terms down by one order)
        keep = QTRUNC + k
        out = {0: 1}
        for _ in range(k):
            nxt = {}
            for e1, c1 in out.items():
                for e2, c2 in jser.items():
                    e = e1 + e2
                    if e > keep:
                        continue
                    nxt[e] = nxt.get(e, 0) + c1 * c2
            out = {e: c for e, c in nxt.items() if c}
        return {e: c for e, c in out.items() if e <= QTRUNC}

    phi = {}
    for i in range(deg + 1):
        ser = coeffs[i]
        # must be rational integers on the q-grid
        qser = {}
        for e, c in ser.items():
            if e > QTRUNC * n:
                continue
            assert C.is_int(c), (n, i, e, c)
            if c[0]:
                assert e % n == 0, (n, i, e)
                qser[e // n] = c[0]
        # peel off powers of j
        while qser:
            e0 = min(qser.items())[0]
            e0 = min(qser)
            c0 = qser[e0]
            if e0 > 0:
                break
            k = -e0
            phi[(i, k)] = phi.get((i, k), 0) + c0
            jp = jpower(k)
            for e, c in jp.items():
                qser[e] = qser.get(e, 0) - c0 * c
            qser = {e: c for e, c in qser.items() if c}
        assert not qser, (n, i, sorted(qser.items())[:4])
    phi = {k: v for k, v in phi.items() if v}

    # verification: symmetry (Phi_1 = X - Y is antisymmetric)
    sign = -1 if n == 1 else 1
    for (i, k), v in phi.items():
        assert phi.get((k, i), 0) == sign * v, (n, i, k)
    # verification: Phi_n(j(q), j(q^n)) = 0 up to truncation
    verify_series_root(n, phi, jq)
    if n in (2, 3, 5):
        verify_kronecker(n, phi)
    return phi


def verify_series_root(n, phi, jq):
    maxdeg = max(max(i, k) for i, k in phi)
    # working truncation with full pole headroom (j(q)^i j(q^n)^k has pole
    # order up to maxdeg * (n + 1))
    trunc = QTRUNC + maxdeg * (n + 1)
    j1 = {m - 1: jq[m] for m in range(len(jq)) if jq[m] and (m - 1) <= trunc}
    jn = {n * (m - 1): jq[m] for m in range(len(jq)) if jq[m] and n * (m - 1) <= trunc}

    def smul(u, v):
        out = {}
        for e1, c1 in u.items():
            for e2, c2 in v.items():
                if e1 + e2 <= trunc:
                    out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return {e: c for e, c in out.items() if c}

    p1 = {0: {0: 1}}
    for d in range(1, maxdeg + 1):
        p1[d] = smul(p1[d - 1], j1)
    pn = {0: {0: 1}}
    for d in range(1, maxdeg + 1):
        pn[d] = smul(pn[d - 1], jn)
    total = {}
    for (i, k), v in phi.items():
        t = smul(p1[i], pn[k])
        for e, c in t.items():
            total[e] = total.get(e, 0) + v * c
    total = {e: c for e, c in total.items() if c and e <= QTRUNC}
    assert not total, (n, sorted(total.items())[:5])


def verify_kronecker(p, phi):
    # Phi_p(X,Y) == (X^p - Y)(X - Y^p) mod p
    ref = {(p, 1): -1, (1, p): -1, (p + 1, 0): 0, (0, 0): 0}
    ref = {}
    for (i1, k1, c1) in [(p, 0, 1), (0, 1, -1)]:
        for (i2, k2, c2) in [(1, 0, 1), (0, p, -1)]:
            key = (i1 + i2, k1 + k2)
            ref[key] = ref.get(key, 0) + c1 * c2
    keys = set(phi) | set(ref)
    for key in keys:
        assert (phi.get(key, 0) - ref.get(key, 0)) % p == 0, (p, key)


def write_phi(n, phi, path):
    lines = ["# modular polynomial Phi_%d: lines 'degX degY coefficient'" % n]
    for (i, k) in sorted(phi, key=lambda t: (-t[0], -t[1])):
        lines.append("%d %d %d" % (i, k, phi[(i, k)]))
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def reduced_forms(D):
    forms = []
    b = D % 2
    limit = int(math.isqrt(-D // 3)) + 1
    while b <= limit:
        m = (b * b - D) // 4
        a = max(b, 1)
        while a * a <= m:
            if a != 0 and m % a == 0:
                c = m // a
                if a <= c and math.gcd(math.gcd(a, b), c) == 1:
                    forms.append((a, b, c))
                    if 0 < b < a or (b and a == c):
                        pass
                    if b != 0 and b != a and a != c:
                        forms.append((a, -b, c))
            a += 1
        b += 2
    return forms


def gen_class_polys(path, bound=100):
    from mpmath import mp, mpc, kleinj, sqrt, mpf

    mp.dps = 300
    # detect normalization of kleinj
    scale = 1728 if abs(kleinj(mpc(0, 1)) - 1) < mpf("1e-200") else 1
    known = {
        -3: [0, 1],
        -4: [-1728, 1],
        -7: [3375, 1],
        -8: [-8000, 1],
        -11: [32768, 1],
        -12: [-54000, 1],
        -16: [-287496, 1],
        -19: [884736, 1],
        -27: [12288000, 1],
        -28: [-16581375, 1],
        -43: [884736000, 1],
        -67: [147197952000, 1],
    }
    lines = ["# Hilbert class polynomials: lines 'D c0 c1 ... (ascending, monic)'"]
    for mD in range(3, bound + 1):
        D = -mD
        if D % 4 not in (0, 1) and (-D) % 4 not in (0, 3):
            continue
        if (-D) % 4 not in (0, 3):
            continue
        forms = reduced_forms(D)
        if not forms:
            continue
        roots = []
        for (a, b, c) in forms:
            tau = mpc(-b, math.sqrt(mD)) / (2 * a)
            tau = mpc(mpf(-b) / (2 * a), sqrt(mpf(mD)) / (2 * a))
            roots.append(scale * kleinj(tau))
        poly = [mpc(1)]
        for r in roots:
            poly = [mpc(0)] + poly
            for i in range(len(poly) - 1):
                poly[i] = poly[i] - r * poly[i + 1]
        coeffs = []
        for z in poly:
            ri = int(mp.nint(z.real))
            assert abs(z.real - ri) < mpf("1e-60"), (D, z)
            assert abs(z.imag) < mpf("1e-60"), (D, z)
            coeffs.append(ri)
        assert coeffs[-1] == 1
        if D in known:
            assert coeffs == known[D], (D, coeffs, known[D])
        lines.append(" ".join([str(D)] + [str(c) for c in coeffs]))
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")
    os.makedirs(outdir, exist_ok=True)
    jq = j_coefficients(JTERMS)
    for n in range(1, 6):
        phi = compute_phi(n, jq)
        if n == 1:
            assert phi == {(1, 0): 1, (0, 1): -1}, phi
        if n == 2:
            v = 0
            for (i, k), c in phi.items():
                v += c * (1728 ** i) * (287496 ** k)
            assert v == 0, v
        write_phi(n, phi, os.path.join(outdir, "phi_%d.txt" % n))
        print("phi_%d: %d monomials, verified" % (n, len(phi)))
    gen_class_polys(os.path.join(outdir, "class_polys.txt"))
    print("class_polys.txt written")


if __name__ == "__main__":
    main()
