"""Brute-force references that share no code with the package internals."""
import math
from fractions import Fraction


def recurrence_ks(k0, depth):
    ks = [k0]
    for n in range(depth):
        ks.append(ks[-1] * (n + 2))
    return ks


def set_builder(ks, a1, a2):
    """S built literally: blocks {k_{n-1} + [m/a]} plus k_n, a = a1 on odd n."""
    a1, a2 = Fraction(a1), Fraction(a2)
    members = set()
    for n in range(1, len(ks)):
        a = a1 if n % 2 else a2
        gap = ks[n] - ks[n - 1]
        big_m = math.ceil(a * gap)
        for m in range(1, big_m):
            members.add(ks[n - 1] + math.floor(Fraction(m) / a))
        members.add(ks[n])
    return members


def count_upto(members, k):
    return sum(1 for x in members if x <= k)


def floor_div(m, a):
    return math.floor(Fraction(m) / Fraction(a))


def sandwich_offset(k, start, a, size):
    """Brute search for m in [0, size-1] with start+[m/a] <= k < start+[(m+1)/a]."""
    hits = [
        m for m in range(size)
        if start + floor_div(m, a) <= k < start + floor_div(m + 1, a)
    ]
    if not hits:  # k sits past the last regular point: offset saturates
        return size - 1
    assert len(hits) == 1
    return hits[0]


def single_envelope_literal(ks, a1, a2, case, j, m):
    """f_j, g_j (case 1) and the tilde versions (case 2), written out literally."""
    a1, a2 = Fraction(a1), Fraction(a2)
    if case == 1:
        f = a1 * (a2 * (ks[2*j] - ks[2*j-1]) + m) / (a1 * ks[2*j] + 1 + m)
        g = a1 * (ks[2*j-1] + a2 * (ks[2*j] - ks[2*j-1]) + 1 + m) / (a1 * ks[2*j] - a1 + m)
    else:
        f = a2 * (a1 * (ks[2*j+1] - ks[2*j]) + m) / (a2 * ks[2*j+1] + 1 + m)
        g = a2 * (ks[2*j] + a1 * (ks[2*j+1] - ks[2*j]) + 1 + m) / (a2 * ks[2*j+1] - a2 + m)
    return f, g


def pair_envelope_literal(ks, a1, a2, b1, b2, case, j, m):
    """F_j, G_j and tilde versions; the tilde-G denominator uses a2 (see ledger)."""
    a1, a2, b1, b2 = (Fraction(x) for x in (a1, a2, b1, b2))
    if case == 1:
        s = a1 + b1
        F = s * (a1 * (a2 + b2) / s * (ks[2*j] - ks[2*j-1]) - (a1 + a1 * b1) / s + m) \
            / (a1 * ks[2*j] + 1 + m)
        G = s * (2 * a1 / s * ks[2*j-1] + a1 * (a2 + b2) / s * (ks[2*j] - ks[2*j-1])
                 + (b1 + a1 * b1 + 2 * a1) / s + m) / (a1 * ks[2*j] - a1 + m)
    else:
        s = a2 + b2
        F = s * (a2 * (a1 + b1) / s * (ks[2*j+1] - ks[2*j]) - (a2 + a2 * b2) / s + m) \
            / (a2 * ks[2*j+1] + 1 + m)
        G = s * (2 * a2 / s * ks[2*j] + a2 * (a1 + b1) / s * (ks[2*j+1] - ks[2*j])
                 + (b2 + a2 * b2 + 2 * a2) / s + m) / (a2 * ks[2*j+1] - a2 + m)
    return F, G
