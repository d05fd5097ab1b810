import pytest

from crewcheck import counterexample
from crewcheck.gf2n import field_create


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False,
                     help="run the n <= 21 fiber-product verification")


@pytest.fixture(scope="session")
def slow(request):
    return request.config.getoption("--slow")


@pytest.fixture(scope="session")
def paper_curves():
    C, D, X = counterexample.curves()
    return C, D, X.sum, X


def brute_affine_count(f, n):
    """Affine points of y^2 + y = f(x) over F_{2^n} by trying every y.

    Scalar field arithmetic only; poles count as one (ramified) point each.
    """
    F = field_create(n)
    squares_plus = {}
    for yb in range(F.order):
        y = F(yb)
        c = (y * y + y).bits
        squares_plus[c] = squares_plus.get(c, 0) + 1
    N = 0
    for xb in range(F.order):
        x = F(xb)
        d = f.den(x)
        if d.is_zero():
            N += 1
        else:
            N += squares_plus.get((f.num(x) / d).bits, 0)
    return N


ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
