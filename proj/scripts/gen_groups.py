#!/usr/bin/env python3
"""Emit data/groups.dat: generating reflections for the exceptional and
monomial reflection groups used by the catalog.

Each group is given by a short list of roots (column vectors) with reflection
orders.  The reflection with root a and order m is

    s = I + (zeta_m - 1) / <a, a> * a a^*

written in exact Q(zeta_n) arithmetic.  The C++ loader closes the fixed
hyperplanes of these generators under the group action and rejects the block
unless the closure has exactly the declared number of hyperplanes.

Rank-5 G33 is realized as the localization of the G34 model at the line
spanned by (1,...,1): we take reflections in roots orthogonal to that line
and pass to the quotient coordinates y_k = x_k - x_6.
"""
from fractions import Fraction
import sympy

_phi_cache = {}


def phi_poly(n):
    if n not in _phi_cache:
        z = sympy.Symbol('z')
        p = sympy.Poly(sympy.cyclotomic_poly(n, z), z)
        _phi_cache[n] = [Fraction(int(c)) for c in reversed(p.all_coeffs())]
    return _phi_cache[n]


class Cyc:
    """Element of Q(zeta_n) in the power basis modulo Phi_n."""

    def __init__(self, n, coeffs):
        self.n = n
        d = len(phi_poly(n)) - 1
        c = [Fraction(x) for x in coeffs] + [Fraction(0)] * max(0, d - len(coeffs))
        self.c = _reduce(n, c)

    @staticmethod
    def root(n, k):
        c = [Fraction(0)] * n
        c[k % n] = Fraction(1)
        return Cyc(n, c)

    @staticmethod
    def rat(n, q):
        return Cyc(n, [Fraction(q)])

    def __add__(self, o):
        o = _lift(self.n, o)
        return Cyc(self.n, [a + b for a, b in zip(self.c, o.c)])

    def __sub__(self, o):
        o = _lift(self.n, o)
        return Cyc(self.n, [a - b for a, b in zip(self.c, o.c)])

    def __neg__(self):
        return Cyc(self.n, [-a for a in self.c])

    def __mul__(self, o):
        o = _lift(self.n, o)
        prod = [Fraction(0)] * (len(self.c) + len(o.c))
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    prod[i + j] += a * b
        return Cyc(self.n, prod)

    def conj(self):
        out = Cyc.rat(self.n, 0)
        for k, a in enumerate(self.c):
            if a:
                out = out + Cyc.root(self.n, -k) * Cyc.rat(self.n, a)
        return out

    def inv(self):
        z = sympy.Symbol('z')
        num = sympy.Poly([sympy.Rational(x.numerator, x.denominator) for x in reversed(self.c)], z, domain='QQ')
        mod = sympy.Poly(sympy.cyclotomic_poly(self.n, z), z, domain='QQ')
        inv = sympy.invert(num, mod)
        coeffs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in reversed(inv.all_coeffs())]
        return Cyc(self.n, coeffs)

    def is_zero(self):
        return all(a == 0 for a in self.c)

    def fmt(self):
        terms = []
        for k, a in enumerate(self.c):
            if a == 0:
                continue
            mag = abs(a)
            sign = '-' if a < 0 else '+'
            if k == 0:
                body = str(mag)
            else:
                zpart = 'z' if k == 1 else f'z^{k}'
                body = zpart if mag == 1 else f'{mag}*{zpart}'
            terms.append((sign, body))
        if not terms:
            return '0'
        s = ('-' if terms[0][0] == '-' else '') + terms[0][1]
        for sign, body in terms[1:]:
            s += f' {sign} {body}'
        return s


def _lift(n, o):
    return o if isinstance(o, Cyc) else Cyc.rat(n, o)


def _reduce(n, c):
    p = phi_poly(n)
    d = len(p) - 1
    c = list(c)
    for i in range(len(c) - 1, d - 1, -1):
        a = c[i]
        if a:
            for j in range(d + 1):
                c[i - d + j] -= a * p[j]
    return c[:d]


def reflection(n, root, order):
    """Matrix of the reflection with the given root and order, over Q(zeta_n)."""
    dim = len(root)
    a = [x if isinstance(x, Cyc) else Cyc.rat(n, x) for x in root]
    norm = Cyc.rat(n, 0)
    for x in a:
        norm = norm + x * x.conj()
    if order == 2:
        eig = Cyc.rat(n, -1)
    else:
        assert n % order == 0
        eig = Cyc.root(n, n // order)
    scale = (eig - 1) * norm.inv()
    m = []
    for i in range(dim):
        row = []
        for j in range(dim):
            v = scale * a[i] * a[j].conj()
            if i == j:
                v = v + 1
            row.append(v)
        m.append(row)
    return m


def quotient_by_ones(m):
    """Induced action on V/<(1,...,1)> in coordinates y_k = x_k - x_last."""
    d = len(m) - 1
    return [[m[j][k] - m[d][k] for k in range(d)] for j in range(d)]


def groups():
    out = []

    # G(3,3,3): permutations and one monomial reflection.
    n = 3
    w = Cyc.root(n, 1)
    out.append(('G(3,3,3)', 3, n, 9, 'imprimitive group G(3,3,3), reflections in e1-e2, e2-e3, e2-w*e3',
                [reflection(n, r, 2) for r in ([1, -1, 0], [0, 1, -1], [0, 1, -w])]))

    # G25: order-3 reflections in e3 and in (1,1,1), (1,w,1), (1,1,w).
    out.append(('G25', 3, n, 12, 'Hessian group of order 648, order-3 reflections',
                [reflection(n, r, 3) for r in ([0, 0, 1], [1, 1, 1], [1, w, 1], [1, 1, w])]))

    # G26: G(3,1,3) together with an order-3 reflection in (1,1,1).
    g26 = [reflection(n, r, 2) for r in ([1, -1, 0], [0, 1, -1], [0, 1, -w])]
    g26 += [reflection(n, r, 3) for r in ([0, 0, 1], [1, 1, 1])]
    out.append(('G26', 3, n, 21, 'Hessian group of order 1296: G(3,1,3) plus an order-3 reflection in (1,1,1)', g26))

    # G24: W(B3) plus the reflection in (1,-1,lambda), lambda = (-1+sqrt(-7))/2 = z+z^2+z^4 in Q(zeta_7).
    n = 7
    lam = Cyc.root(n, 1) + Cyc.root(n, 2) + Cyc.root(n, 4)
    out.append(('G24', 3, n, 21, 'Klein group of order 336: W(B3) plus the reflection in (1,-1,lambda), lambda = z+z^2+z^4',
                [reflection(n, r, 2) for r in ([1, 0, 0], [1, -1, 0], [0, 1, -1], [1, -1, lam])]))

    # G27: W(H3) plus the reflection in (1,0,w), in Q(zeta_15).
    n = 15
    z5 = Cyc.root(n, 3)
    tau = -(z5 * z5 + z5 * z5 * z5)  # golden ratio
    tau_inv = tau - 1
    w = Cyc.root(n, 5)
    out.append(('G27', 3, n, 45, 'Valentiner group of order 2160: W(H3) plus the reflection in (1,0,w), w = z^5',
                [reflection(n, r, 2) for r in ([1, 0, 0], [0, 1, 0], [1, tau, tau_inv], [1, 0, w])]))

    # G29, G31 over Q(i).
    n = 4
    i = Cyc.root(n, 1)
    g444 = [reflection(n, r, 2) for r in ([1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 1, -i])]
    ones = reflection(n, [1, 1, 1, 1], 2)
    out.append(('G29', 4, n, 40, 'order 7680: G(4,4,4) plus the reflection in (1,1,1,1)', g444 + [ones]))
    out.append(('G31', 4, n, 60, 'order 46080: G(4,2,4) plus the reflection in (1,1,1,1)',
                g444 + [ones, reflection(n, [0, 0, 0, 1], 2)]))

    # G33, G34 over Q(zeta_3).
    n = 3
    w = Cyc.root(n, 1)
    w2 = Cyc.root(n, 2)
    perm6 = [[1 if k == j else (-1 if k == j + 1 else 0) for k in range(6)] for j in range(5)]
    g34 = [reflection(n, r, 2) for r in perm6]
    g34 += [reflection(n, [0, 0, 0, 0, 1, -w], 2), reflection(n, [1] * 6, 2)]
    g33 = [quotient_by_ones(reflection(n, r, 2)) for r in perm6 + [[1, 1, w, w, w2, w2]]]
    out.append(('G33', 5, n, 45, 'order 51840: localization of the G34 model at the line through (1,...,1), '
                'quotient coordinates y_k = x_k - x_6', g33))
    out.append(('G34', 6, n, 126, 'Mitchell group of order 39191040: G(3,3,6) plus the reflection in (1,...,1)', g34))
    return out


def main():
    lines = [
        '# Generating reflections for complex reflection groups.',
        '# Scalars use the arrangement syntax; z is a primitive zeta-th root of unity.',
        '# Produced by scripts/gen_groups.py.  Each block is checked at load time:',
        '# closing the fixed hyperplanes of the generators must give exactly',
        '# the declared number of hyperplanes.',
        '',
    ]
    for name, dim, n, count, note, gens in groups():
        lines.append(f'# {note}')
        lines.append(f'group {name} dim={dim} zeta={n} hyperplanes={count}')
        for g in gens:
            for row in g:
                lines.append(', '.join(x.fmt() for x in row))
        lines.append('')
    print('\n'.join(lines), end='')


if __name__ == '__main__':
    main()
