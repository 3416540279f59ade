from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def bessel_oracle():
    rows = []
    for line in (DATA / "bessel_k_oracle.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        nu, x, value, method = line.split()
        rows.append((float(nu), float(x), float(value), method))
    return rows


def rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)
