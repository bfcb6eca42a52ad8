import pytest

from zdbkit import (
    ResidueRing,
    certify_all,
    construct_product,
    cyclic_subgroup,
    default_catalog,
)


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def certification(catalog):
    """The full re-verification and bound certification, run once."""
    return certify_all(catalog)


@pytest.fixture(scope="session")
def z7_product():
    # the worked example: Z_7, G = <2>, H = <6>, a (21, 11, 1) function
    ring = ResidueRing(7)
    return construct_product(ring, cyclic_subgroup(ring, 2), cyclic_subgroup(ring, 6))


@pytest.fixture()
def run_cli(capsys):
    """Invoke the CLI in process; returns (exit code, stdout, stderr)."""
    from zdbkit.cli import main

    def run(argv):
        try:
            code = main(argv)
        except SystemExit as exc:  # argparse usage failures
            code = exc.code
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
