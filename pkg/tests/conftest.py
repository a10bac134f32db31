import itertools


def span_of(R, gens, n):
    """All R-linear combinations of gens (brute force, tiny rings only)."""
    out = {tuple(R.zero() for _ in range(n))}
    for g in gens:
        new = set()
        for v in out:
            for c in R.elements():
                new.add(tuple(R.add(x, R.mul(c, y)) for x, y in zip(v, g)))
        out = new
    return out


def brute_kernel(R, A, n):
    elems = list(R.elements())
    ker = set()
    for v in itertools.product(elems, repeat=n):
        if all(not any(R.sum(R.mul(a, x) for a, x in zip(row, v))) for row in A):
            ker.add(v)
    return ker


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")
