import itertools

import pytest

from lnqec.codes import (
    CATALOG_NAMES,
    CodeFormatError,
    DistanceUnknownError,
    catalog_get,
    codewords,
    format_code_text,
    from_parity_check,
    is_mds,
    load_code,
    min_distance,
    parse_code_text,
    resolve_code,
)
from lnqec.gf4 import F4Vector, RankDeficientError, mat_vec_mul


def smallest_dependent_columns(code, max_w=4):
    """Second distance oracle: fewest columns of H admitting a nontrivial zero combination."""
    scalars = (1,) if code.q == 2 else (1, 2, 3)
    cols = [F4Vector.from_list(code.H[i, j] for i in range(code.r)) for j in range(code.n)]
    for w in range(1, max_w + 1):
        for pos in itertools.combinations(range(code.n), w):
            for coeffs in itertools.product(scalars, repeat=w):
                acc = F4Vector.zeros(code.r)
                for p, c in zip(pos, coeffs):
                    acc = acc + cols[p].scale(c)
                if acc.is_zero():
                    return w
    return None


def test_repetition_code():
    code = from_parity_check(2, [[1, 1, 0], [1, 0, 1]])
    assert (code.n, code.k, code.q) == (3, 1, 2)
    assert code.d is None
    assert min_distance(code) == 3


def test_hamming_from_parity_check():
    code = catalog_get("hamming7_b")
    assert (code.n, code.k) == (7, 4)
    assert code.col_perm == (0, 1, 3, 2, 4, 5, 6)
    assert code.d == 3 and code.d_source == "computed"


def test_rank_deficient_rejected():
    with pytest.raises(RankDeficientError):
        from_parity_check(2, [[0, 0, 0], [1, 0, 1]])


def test_parse_errors():
    with pytest.raises(CodeFormatError):
        from_parity_check(2, [[1, "w"]])
    with pytest.raises(CodeFormatError):
        from_parity_check(3, [[1, 1]])
    with pytest.raises(CodeFormatError):
        parse_code_text("2 3 1\n1 1 0\n")
    with pytest.raises(CodeFormatError):
        parse_code_text("2 3 1\n1 1 0\n1 0\n")
    with pytest.raises(CodeFormatError):
        parse_code_text("two three one\n")


@pytest.mark.parametrize("name, expected", [("rep3_b", 3), ("hamming7_b", 3), ("mds4_2_q", 3), ("ext_rs5_2_q", 4)])
def test_min_distance(name, expected):
    code = catalog_get(name)
    assert min_distance(code) == expected


def test_hamming_distance_by_explicit_enumeration():
    code = catalog_get("hamming7_b")
    words = list(codewords(code))
    assert len(words) == 16
    assert min(w.weight() for w in words if not w.is_zero()) == 3


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_distance_agrees_with_column_oracle(name):
    code = catalog_get(name)
    assert smallest_dependent_columns(code) == code.d


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_generator_is_orthogonal_to_parity_checks(name):
    code = catalog_get(name)
    g = code.generator()
    for row in g.rows:
        assert mat_vec_mul(code.H, row).is_zero()
    assert g.rank() == code.k


@pytest.mark.parametrize(
    "name, mds", [("rep3_b", True), ("hamming7_b", False), ("mds4_2_q", True), ("ext_rs5_2_q", True)]
)
def test_is_mds(name, mds):
    assert is_mds(catalog_get(name)) is mds


def test_is_mds_needs_distance():
    with pytest.raises(DistanceUnknownError):
        is_mds(from_parity_check(2, [[1, 1, 0], [1, 0, 1]]))


def test_catalog_labels():
    assert catalog_get("rep3_b").label == "[3,1,3]_2"
    assert catalog_get("hamming7_b").label == "[7,4,3]_2"
    assert catalog_get("mds4_2_q").label == "[4,2,3]_4"
    with pytest.raises(KeyError):
        catalog_get("golay")


def test_enumeration_cap():
    with pytest.raises(ValueError, match="declare d"):
        min_distance(catalog_get("hamming7_b"), cap=8)


def test_code_file_round_trip(tmp_path):
    text = "# quaternary\n4 4 2\n1 0 W w\n0 1 w W\nd 3\n"
    path = tmp_path / "mds.code"
    path.write_text(text)
    code = load_code(path)
    assert code.d == 3 and code.d_source == "declared"
    assert code.H == catalog_get("mds4_2_q").H
    again = parse_code_text(format_code_text(code))
    assert again.H == code.H and again.d == 3
    assert resolve_code(str(path)).name == "mds"


def test_original_coordinates_round_trip():
    code = catalog_get("hamming7_b")
    v = F4Vector.from_list([1, 0, 0, 1, 0, 0, 0])
    assert code.to_original(v).to_list() == [1, 0, 1, 0, 0, 0, 0]
    assert code.from_original(code.to_original(v)) == v
    # a codeword in standard coordinates is a codeword of the user's matrix
    user_h = [
        [0, 0, 0, 1, 1, 1, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [1, 0, 1, 0, 1, 0, 1],
    ]
    for w in codewords(code):
        orig = code.to_original(w).to_list()
        assert all(sum(a * b for a, b in zip(row, orig)) % 2 == 0 for row in user_h)
