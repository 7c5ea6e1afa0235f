"""Shared test helpers: seeded random generators and an in-process CLI runner."""

import contextlib
import io
from fractions import Fraction

from lctkit import GAUSS, Polynomial
from lctkit.cli import main


def run_cli(argv):
    """Run the CLI in-process and capture (exit_code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def random_element(rng, field=GAUSS, zero_ok=True):
    while True:
        coeffs = [
            Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            for _ in range(field.degree)
        ]
        el = field.element(coeffs)
        if zero_ok or el:
            return el


def random_poly(rng, field=GAUSS, variables=("x", "y", "z"), max_terms=5, max_exp=4):
    total = Polynomial.zero(field, variables)
    for _ in range(rng.randint(0, max_terms)):
        exps = {v: rng.randint(0, max_exp) for v in variables}
        total = total + Polynomial.monomial(field, variables, exps, random_element(rng, field))
    return total
