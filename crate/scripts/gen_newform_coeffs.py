#!/usr/bin/env python3
"""Generate bundled q-expansion files for the rational newforms used by the
holomorphic test cases.

Weight-2 forms attached to elliptic curves are computed by point counting.
Other rational newforms of prime level are computed from weight-k Manin
symbols for Gamma0(N) modulo a large prime: the eigen-functional for a
rational Hecke eigensystem is located from T_2, T_3, ... and a_p is read off
T_p applied to a single Manin symbol (Cremona's Heilbronn matrices).

Usage:
    gen_newform_coeffs.py curve  LABEL a1 a2 a3 a4 a6 NMAX OUT
    gen_newform_coeffs.py msym   LABEL N K A2 A3 [A5 ...] NMAX OUT
    gen_newform_coeffs.py rational N K          # list rational eigensystems
"""
import sys

ELL = 2147483647  # 2^31 - 1


def primes_upto(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n + 1) if sieve[i]]


def extend_multiplicative(ap, n_max, k, level):
    """a(n) for 1 <= n <= n_max from prime eigenvalues."""
    a = [0] * (n_max + 1)
    a[1] = 1
    # prime powers
    pp = {}
    for p, v in ap.items():
        if p > n_max:
            continue
        seq = [1, v]
        while p ** len(seq) <= n_max:
            if level % p == 0:
                seq.append(seq[-1] * v)
            else:
                seq.append(v * seq[-1] - p ** (k - 1) * seq[-2])
        pp[p] = seq
    spf = list(range(n_max + 1))
    for i in range(2, int(n_max ** 0.5) + 1):
        if spf[i] == i:
            for j in range(i * i, n_max + 1, i):
                if spf[j] == j:
                    spf[j] = i
    for n in range(2, n_max + 1):
        p = spf[n]
        m, e = n, 0
        while m % p == 0:
            m //= p
            e += 1
        a[n] = pp[p][e] * a[m]
    return a


# --- elliptic curves -------------------------------------------------------

def curve_ap(coeffs, p):
    a1, a2, a3, a4, a6 = coeffs
    count = 1  # point at infinity
    for x in range(p):
        # y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
        b = (a1 * x + a3) % p
        c = -(x ** 3 + a2 * x * x + a4 * x + a6) % p
        if p == 2:
            count += sum(1 for y in range(2) if (y * y + b * y + c) % 2 == 0)
            continue
        disc = (b * b - 4 * c) % p
        if disc == 0:
            count += 1
        elif pow(disc, (p - 1) // 2, p) == 1:
            count += 2
    return p + 1 - count


# --- Manin symbols ---------------------------------------------------------

class ModSym:
    def __init__(self, level, weight):
        self.N = level
        self.k = weight
        self.w = weight - 2
        n = level
        # P^1(Z/N) for prime N: (c:1) -> c, (1:0) -> N
        self.npts = n + 1
        self.nsym = (self.w + 1) * self.npts
        self.binom = [[1]]
        for i in range(1, self.w + 1):
            prev = self.binom[-1]
            self.binom.append([1] + [prev[j - 1] + prev[j] for j in range(1, i)] + [1])
        self._build()

    def p1_index(self, c, d):
        """Index and scalar: (c, d) = lambda * representative."""
        n = self.N
        c %= n
        d %= n
        if d != 0:
            inv = pow(d, -1, n)
            return (c * inv) % n, d
        assert c != 0
        return n, c

    def sym_index(self, i, p1):
        return i * self.npts + p1

    def apply(self, i, c, d, mat):
        """[X^i Y^(w-i), (c,d)] * [[a,b],[e,f]] as {symbol: coeff}."""
        a, b, e, f = mat
        w = self.w
        # (aX + bY)^i (eX + fY)^(w-i)
        poly = [0] * (w + 1)  # coefficient of X^j Y^(w-j)
        for s in range(i + 1):
            cs = self.binom[i][s] * a ** s * b ** (i - s)
            for t in range(w - i + 1):
                ct = self.binom[w - i][t] * e ** t * f ** (w - i - t)
                poly[s + t] += cs * ct
        cc, dd = c * a + d * e, c * b + d * f
        idx, lam = self.p1_index(cc, dd)
        # [P, lam*(c,d)] = [P, (c,d)] for Gamma0(N) with lam a unit? Manin symbols
        # for Gamma0(N) depend on (c:d) only, up to the sign action of -1
        # acting trivially when w is even.
        out = {}
        for j, v in enumerate(poly):
            if v:
                key = self.sym_index(j, idx)
                out[key] = out.get(key, 0) + v
        return out

    def _build(self):
        S = (0, -1, 1, 0)
        T = (0, -1, 1, -1)
        rels = []
        n = self.N
        reps = [(c, 1) for c in range(n)] + [(1, 0)]
        for i in range(self.w + 1):
            for p1, (c, d) in enumerate(reps):
                me = self.sym_index(i, p1)
                r = {me: 1}
                for key, v in self.apply(i, c, d, S).items():
                    r[key] = r.get(key, 0) + v
                rels.append(r)
                r = {me: 1}
                for key, v in self.apply(i, c, d, T).items():
                    r[key] = r.get(key, 0) + v
                c2, d2 = c * 0 + d * 1, c * -1 + d * -1
                # x T^2 = (x T) T
                for key, v in self.apply(i, c, d, (0 * 0 + -1 * 1, 0 * -1 + -1 * -1, 1 * 0 + -1 * 1, 1 * -1 + -1 * -1)).items():
                    r[key] = r.get(key, 0) + v
                rels.append(r)
        self.reps = reps
        self._reduce(rels)

    def _reduce(self, rels):
        m = self.nsym
        rows = []
        pivots = {}
        for r in rels:
            row = {k: v % ELL for k, v in r.items() if v % ELL}
            # eliminate existing pivots
            changed = True
            while row:
                piv_hit = [c for c in row if c in pivots]
                if not piv_hit:
                    break
                for c in piv_hit:
                    if c not in row:
                        continue
                    coef = row[c]
                    for kk, vv in pivots[c].items():
                        nv = (row.get(kk, 0) - coef * vv) % ELL
                        if nv:
                            row[kk] = nv
                        else:
                            row.pop(kk, None)
            if not row:
                continue
            c0 = min(row)
            inv = pow(row[c0], -1, ELL)
            row = {kk: vv * inv % ELL for kk, vv in row.items()}
            # back-substitute into existing pivots
            for pc, prow in pivots.items():
                if c0 in prow:
                    coef = prow[c0]
                    for kk, vv in row.items():
                        nv = (prow.get(kk, 0) - coef * vv) % ELL
                        if nv:
                            prow[kk] = nv
                        else:
                            prow.pop(kk, None)
            pivots[c0] = row
        free = [c for c in range(m) if c not in pivots]
        self.free = free
        self.free_pos = {c: j for j, c in enumerate(free)}
        self.pivots = pivots
        self.dim = len(free)

    def reduce_symbol(self, s):
        """Coordinates of a Manin symbol in the free basis (dict)."""
        if s in self.free_pos:
            return {self.free_pos[s]: 1}
        out = {}
        for kk, vv in self.pivots[s].items():
            if kk == s:
                continue
            j = self.free_pos[kk]
            out[j] = (out.get(j, 0) - vv) % ELL
        return out

    def symbol_values(self, phi):
        """phi evaluated on every Manin symbol."""
        vals = []
        for s in range(self.nsym):
            vals.append(sum(v * phi[j] for j, v in self.reduce_symbol(s).items()) % ELL)
        return vals

    def hecke_on_symbol(self, s, p):
        i, p1 = divmod(s, self.npts)
        c, d = self.reps[p1]
        acc = {}
        for h in heilbronn_cremona(p):
            for key, v in self.apply(i, c, d, h).items():
                acc[key] = acc.get(key, 0) + v
        return acc

    def hecke_matrix(self, p):
        d = self.dim
        cols = []
        for s in self.free:
            img = self.hecke_on_symbol(s, p)
            col = [0] * d
            for key, v in img.items():
                for j, u in self.reduce_symbol(key).items():
                    col[j] = (col[j] + v * u) % ELL
            cols.append(col)
        # matrix acting on column vectors: M[r][c]
        return [[cols[c][r] for c in range(d)] for r in range(d)]


def heilbronn_cremona(p):
    if p == 2:
        return [(1, 0, 0, 2), (2, 0, 0, 1), (2, 1, 0, 1), (1, 0, 1, 2)]
    out = [(1, 0, 0, p)]
    for r in range(-(p // 2), p // 2 + 1):
        x1, x2, y1, y2, a, b = p, -r, 0, 1, -p, r
        out.append((x1, x2, y1, y2))
        while b != 0:
            q = round_half(a, b)
            c = a - b * q
            a = -b
            b = c
            x3 = q * x2 - x1
            x1, x2 = x2, x3
            y3 = q * y2 - y1
            y1, y2 = y2, y3
            out.append((x1, x2, y1, y2))
    return out


def round_half(a, b):
    # nearest integer to a/b, ties away from zero (C roundf)
    from fractions import Fraction
    f = Fraction(a, b)
    fl = f.numerator // f.denominator
    frac = f - fl
    if frac > Fraction(1, 2):
        return fl + 1
    if frac < Fraction(1, 2):
        return fl
    return fl + 1 if f > 0 else fl


def left_kernel(mat, t):
    """Basis of {phi : phi (M - t) = 0} over F_ELL."""
    d = len(mat)
    # transpose system: (M - t)^T phi^T = 0
    a = [[(mat[c][r] - (t if r == c else 0)) % ELL for c in range(d)] for r in range(d)]
    return nullspace(a)


def nullspace(a):
    rows = [r[:] for r in a]
    ncol = len(rows[0]) if rows else 0
    piv_cols = []
    rank = 0
    for col in range(ncol):
        sel = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                sel = r
                break
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        inv = pow(rows[rank][col], -1, ELL)
        rows[rank] = [v * inv % ELL for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % ELL for x, y in zip(rows[r], rows[rank])]
        piv_cols.append(col)
        rank += 1
    free = [c for c in range(ncol) if c not in piv_cols]
    basis = []
    for fc in free:
        v = [0] * ncol
        v[fc] = 1
        for r, pc in enumerate(piv_cols):
            v[pc] = (-rows[r][fc]) % ELL
        basis.append(v)
    return basis


def row_times(vecs, mat):
    d = len(mat)
    return [[sum(v[r] * mat[r][c] for r in range(d)) % ELL for c in range(d)] for v in vecs]


def restrict_eigen(space, mat, t):
    """Sub-span of row vectors in `space` with phi M = t phi."""
    if not space:
        return []
    imgs = row_times(space, mat)
    diffs = [[(x - t * y) % ELL for x, y in zip(im, v)] for im, v in zip(imgs, space)]
    # find combinations c with sum c_i diffs_i = 0
    ker = nullspace([[diffs[i][j] for i in range(len(space))] for j in range(len(mat))])
    return [[sum(c[i] * space[i][j] for i in range(len(space))) % ELL for j in range(len(mat))] for c in ker]


def signed(v):
    v %= ELL
    return v - ELL if v > ELL // 2 else v


def eigen_functional(ms, eigs):
    primes = primes_upto(100)
    space = None
    for p, t in zip([q for q in primes if ms.N % q], eigs):
        mat = ms.hecke_matrix(p)
        if space is None:
            space = left_kernel(mat, t % ELL)
        else:
            space = restrict_eigen(space, mat, t % ELL)
    return space


def list_rational(n, k):
    ms = ModSym(n, k)
    print(f"dim modular symbols = {ms.dim}")
    bound = int(2 * 2 ** ((k - 1) / 2))
    t2 = ms.hecke_matrix(2)
    for t in range(-bound, bound + 1):
        ker = left_kernel(t2, t % ELL)
        if ker:
            print(f"a2={t}: kernel dim {len(ker)}")
            t3 = ms.hecke_matrix(3)
            b3 = int(2 * 3 ** ((k - 1) / 2))
            for u in range(-b3, b3 + 1):
                sub = restrict_eigen(ker, t3, u % ELL)
                if sub:
                    print(f"   a3={u}: dim {len(sub)}")


def newform_ap(ms, eigs, n_max):
    space = eigen_functional(ms, eigs)
    if not space:
        raise SystemExit("no eigen-functional for the given eigenvalues")
    phi = space[0]
    vals = ms.symbol_values(phi)
    base = next(s for s in range(ms.nsym) if vals[s])
    inv = pow(vals[base], -1, ELL)
    ap = {}
    for p in primes_upto(n_max):
        if ms.N % p == 0:
            continue
        img = ms.hecke_on_symbol(base, p)
        tot = sum(v * vals[key] for key, v in img.items()) % ELL
        ap[p] = signed(tot * inv)
        assert abs(ap[p]) <= 2 * p ** ((ms.k - 1) / 2) + 1e-9, (p, ap[p])
    return ap, len(space)


def write_file(path, k, n, a):
    with open(path, "w") as fh:
        fh.write(f"# lseries-coeffs v1 weight={k} level={n} fricke=+1 nmin=1\n")
        for i in range(1, len(a)):
            fh.write(f"{i} {a[i]}\n")


def main(argv):
    if argv[0] == "curve":
        label = argv[1]
        coeffs = [int(x) for x in argv[2:7]]
        n_max = int(argv[7])
        level = int(label.split(".")[0])
        ap = {}
        for p in primes_upto(n_max):
            ap[p] = curve_ap(coeffs, p)
        a = extend_multiplicative(ap, n_max, 2, level)
        write_file(argv[8], 2, level, a)
    elif argv[0] == "msym":
        label, n, k = argv[1], int(argv[2]), int(argv[3])
        eigs = [int(x) for x in argv[4:-2]]
        n_max, out = int(argv[-2]), argv[-1]
        ms = ModSym(n, k)
        ap, dim = newform_ap(ms, eigs, n_max)
        # prime level, Fricke eigenvalue +1: a_N = -N^(k/2-1)
        ap[n] = -(n ** (k // 2 - 1))
        a = extend_multiplicative(ap, n_max, k, n)
        write_file(out, k, n, a)
        print(f"eigenspace dim {dim}; a(1..10) = {a[1:11]}")
    elif argv[0] == "rational":
        list_rational(int(argv[1]), int(argv[2]))


if __name__ == "__main__":
    main(sys.argv[1:])
