"""Cubic fields, extension providers and the unramified extension L_x."""

from dataclasses import replace

import pytest

from masseytower.errors import NoProviderData, ProviderFormatError
from masseytower.extension.cubic import cubic_fields_of_discriminant
from masseytower.extension.provider import ChainedProvider, FileProvider, NativeCubicProvider, default_provider
from masseytower.extension.unramified import (
    artin_consistent,
    build_extension,
    character_value,
    frobenius_class,
    verify_unramified,
)
from masseytower.numberfield.order import maximal_order
from masseytower.quadratic.characters import character_basis
from masseytower.quadratic.classgroup import class_group


@pytest.fixture(scope="module")
def hilbert_23():
    G = class_group(-23)
    (x,) = character_basis(G, 3)
    return G, x, build_extension(G, 3, x, NativeCubicProvider())


def test_cubic_field_of_discriminant_minus_23():
    fields = cubic_fields_of_discriminant(-23)
    assert len(fields) == 1
    assert maximal_order(fields[0]).discriminant == -23


def test_no_cubic_field_without_three_torsion():
    assert cubic_fields_of_discriminant(-7) == []


@pytest.mark.slow
def test_rank_two_gives_four_cubic_fields():
    fields = cubic_fields_of_discriminant(-4027)
    assert len(fields) == 4
    assert all(maximal_order(f).discriminant == -4027 for f in fields)


def test_extension_is_unramified(hilbert_23):
    G, x, L = hilbert_23
    report = verify_unramified(L)
    assert report.passed
    assert report.discriminant == (-23) ** 3
    assert report.sigma_order == 3
    assert report.fixed_rank == 2
    assert report.ramified_primes == []


def test_sigma_is_pinned_to_frobenius(hilbert_23):
    G, x, L = hilbert_23
    assert L.character == x
    Q = L.artin_pinning
    assert character_value(G, x, Q) == 1
    assert frobenius_class(L, Q) == 1
    assert artin_consistent(L, G, x)
    assert not artin_consistent(L, G, x.scaled(2))


def test_identity_is_not_a_generator(hilbert_23):
    _, _, L = hilbert_23
    n = L.order.degree
    identity = [[int(i == j) for j in range(n)] for i in range(n)]
    report = verify_unramified(replace(L, sigma_matrix=identity, _sigma_powers=[]))
    assert not report.passed
    assert report.sigma_order == 1


def test_native_provider_is_cubic_only():
    provider = NativeCubicProvider()
    with pytest.raises(NoProviderData):
        provider.candidates(5, -90868)
    assert [r.p for r in provider.candidates(3, -23)] == [3]


def test_file_provider(tmp_path):
    path = tmp_path / "quintics.txt"
    path.write_text("# p D c_0 ... c_p\n\n3 -23 -1 -1 0 1\n")
    provider = FileProvider(str(path))
    (record,) = provider.candidates(3, -23)
    assert record.coefficients == (-1, -1, 0, 1)
    with pytest.raises(NoProviderData):
        provider.candidates(5, -23)


@pytest.mark.parametrize(
    "line",
    [
        "3 -23 -1 -1 0",       # too few coefficients
        "3 23 -1 -1 0 1",      # positive D
        "3 -23 -1 -1 0 2",     # not monic
        "3 -23 -1 0 0 1",      # x^3 - 1
        "3 -23 a -1 0 1",
    ],
)
def test_file_provider_rejects_bad_lines(tmp_path, line):
    path = tmp_path / "bad.txt"
    path.write_text("3 -23 -1 -1 0 1\n" + line + "\n")
    with pytest.raises(ProviderFormatError) as info:
        FileProvider(str(path))
    assert info.value.line_number == 2


def test_missing_provider_file(tmp_path):
    with pytest.raises(ProviderFormatError):
        FileProvider(str(tmp_path / "absent.txt"))


def test_chained_provider_falls_through(tmp_path):
    path = tmp_path / "quintics.txt"
    path.write_text("5 -90868 -1 -1 0 0 0 1\n")
    provider = default_provider(str(path))
    assert isinstance(provider, ChainedProvider)
    assert provider.candidates(5, -90868)[0].p == 5
    assert provider.candidates(3, -23)[0].p == 3
    with pytest.raises(NoProviderData):
        provider.candidates(7, -23)
