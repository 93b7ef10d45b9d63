"""Independent reference implementations used to check the library.

None of these import the code paths they check.
"""
import cmath
import math


def analysis_matrix(lowpass, n):
    """Dense n x n matrix of one periodic DWT step: approx rows then detail rows."""
    taps = len(lowpass)
    highpass = [(-1) ** k * lowpass[taps - 1 - k] for k in range(taps)]
    rows = []
    for filt in (lowpass, highpass):
        for i in range(n // 2):
            row = [0.0] * n
            for k in range(taps):
                row[(2 * i + k) % n] += filt[k]
            rows.append(row)
    return rows


def matvec(m, v):
    return [math.fsum(a * b for a, b in zip(row, v)) for row in m]


def wpt_by_matrices(signal, lowpass, level):
    """Packet leaves via explicit matrix products, re-ordered with the Gray code.

    Leaves come out in natural (a-before-d) order; frequency band k is the
    natural leaf with index k XOR (k >> 1).
    """
    nodes = [list(map(float, signal))]
    for _ in range(level):
        nxt = []
        for node in nodes:
            out = matvec(analysis_matrix(lowpass, len(node)), node)
            half = len(node) // 2
            nxt.extend([out[:half], out[half:]])
        nodes = nxt
    return [nodes[k ^ (k >> 1)] for k in range(len(nodes))]


def moments(coeffs):
    n = len(coeffs)
    mu = math.fsum(coeffs) / n
    var = math.fsum((c - mu) ** 2 for c in coeffs) / n
    sd = math.sqrt(var)
    if sd < 1e-12:
        return mu, sd, 0.0, 0.0
    skew = math.fsum(((c - mu) / sd) ** 3 for c in coeffs) / n
    kurt = math.fsum(((c - mu) / sd) ** 4 for c in coeffs) / n - 3.0
    return mu, sd, skew, kurt


def dft_magnitudes(x):
    n = len(x)
    return [abs(sum(x[t] * cmath.exp(-2j * math.pi * k * t / n) for t in range(n))) for k in range(n)]


def entropy_bits(p):
    return -math.fsum(q * math.log2(q) for q in p if q > 0)


def chrf_bruteforce(hyp, ref, max_n=6, beta=2.0):
    hyp = "".join(hyp.split())
    ref = "".join(ref.split())
    if not hyp:
        return 0.0
    ps, rs = [], []
    for n in range(1, max_n + 1):
        hg = [hyp[i:i + n] for i in range(len(hyp) - n + 1)]
        rg = [ref[i:i + n] for i in range(len(ref) - n + 1)]
        if not hg and not rg:
            continue
        match = sum(min(hg.count(g), rg.count(g)) for g in set(hg))
        ps.append(match / len(hg) if hg else 0.0)
        rs.append(match / len(rg) if rg else 0.0)
    p, r = sum(ps) / len(ps), sum(rs) / len(rs)
    if p + r == 0:
        return 0.0
    return 100 * (1 + beta**2) * p * r / (beta**2 * p + r)


def auc_mann_whitney(scores, positives):
    """P(score_pos > score_neg) + 0.5 P(tie)."""
    pos = [s for s, y in zip(scores, positives) if y]
    neg = [s for s, y in zip(scores, positives) if not y]
    wins = 0.0
    for a in pos:
        for b in neg:
            wins += 1.0 if a > b else 0.5 if a == b else 0.0
    return wins / (len(pos) * len(neg))


def best_accuracy_sweep(points, labels, grid):
    """Max accuracy of the rule (H > h and E > e) over a threshold grid, by loops."""
    best = 0.0
    for h in grid:
        for e in grid:
            correct = sum((H > h and E > e) == y for (H, E), y in zip(points, labels))
            best = max(best, correct / len(labels))
    return best
