import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

from zipstrata.roots import build_classical  # noqa: E402
from zipstrata.strata import build_zip_datum  # noqa: E402


def all_cases(max_n: int, q: int = 3, gl_signatures: bool = True):
    """(family, n, signature) for every family up to rank max_n."""
    out = []
    for n in range(1, max_n + 1):
        out.append(("sp_split", n, None))
        for r in range(n, (n - 1) // 2, -1):
            s = n - r
            if r < s:
                continue
            if gl_signatures or s == 0:
                out.append(("gl_split", n, (r, s)))
            out.append(("u_inert", n, (r, s)))
    return out


@pytest.fixture(scope="session")
def zd_factory():
    cache = {}

    def make(family, n, q, signature=None):
        key = (family, n, q, signature)
        if key not in cache:
            cache[key] = build_zip_datum(build_classical(family, n, q, signature))
        return cache[key]

    return make
