import pytest
from hypothesis import given, strategies as st

from binorder import formats
from binorder.errors import ParseError
from binorder.identity import IdentitySpec, search
from binorder.matching import MatchingCertificate, order

N20 = IdentitySpec(20, (0, 5, 6, 7, 18), (1, 3, 4, 8))


def test_identity_round_trip():
    text = formats.write_identity(N20)
    assert text == "IDENTITY v1\nn=20\nA=0,5,6,7,18\nB=1,3,4,8\n"
    assert formats.parse_identity(text) == N20
    assert formats.write_identity(formats.parse_identity(text)) == text


def test_multiple_identity_records():
    specs = search(12, "wsb")
    assert len(specs) > 1
    text = formats.write_identities(specs)
    assert formats.parse_identity_records(text) == specs
    with pytest.raises(ParseError):
        formats.parse_identity(formats.write_identities(specs[:2]))


@pytest.mark.parametrize(
    "text,line",
    [
        ("IDENTITY v1\nn=6\nA=3,0\nB=1,2\n", 3),
        ("IDENTITY v1\nn=6\nA=0,3\nB=1,1\n", 4),
        ("IDENTITY v2\nn=6\nA=0,3\nB=1,2\n", 1),
        ("IDENTITY v1\nn=06\nA=0,3\nB=1,2\n", 2),
        ("IDENTITY v1\nn=6\nA=0,3\nB=1,2", 4),
        ("IDENTITY v1\nn=6\nA=0,3\n", 4),
        ("IDENTITY v1\r\nn=6\nA=0,3\nB=1,2\n", 1),
        ("IDENTITY v1\nn=6\nA=\nB=1,2\n", 3),
    ],
)
def test_bad_identity_files(text, line):
    with pytest.raises(ParseError) as info:
        formats.parse_identity(text)
    assert info.value.line == line


def test_a_not_ascending_is_rejected():
    with pytest.raises(ParseError):
        formats.parse_identity("IDENTITY v1\nn=4\nA=4,0\nB=1,3\n")


def test_certificate_round_trip():
    cert = order(IdentitySpec(6, (0, 3), (1, 2)))
    text = formats.write_certificate(cert)
    assert text.startswith("ORDERABLE-CERT v1\nn=6\nA=0,3\nB=1,2\ntype=perfect\npairs=21\n0x0 ")
    assert formats.parse_certificate(text) == cert
    assert formats.write_certificate(formats.parse_certificate(text)) == text


def _cert_text(pairs):
    head = "ORDERABLE-CERT v1\nn=2\nA=0,2\nB=1\ntype=perfect\n"
    return head + f"pairs={len(pairs)}\n" + "".join(f"{p}\n" for p in pairs)


def test_certificate_parse_errors():
    with pytest.raises(ParseError):
        formats.parse_certificate(_cert_text(["0x3 0x2", "0x0 0x1"]))
    with pytest.raises(ParseError):
        formats.parse_certificate(_cert_text(["0x0 0x1", "0x0 0x2"]))
    with pytest.raises(ParseError):
        formats.parse_certificate(_cert_text(["0x0 0x1", "0x3 0X2"]))
    with pytest.raises(ParseError):
        formats.parse_certificate(_cert_text(["0x0 0x1"]).replace("pairs=1", "pairs=2"))
    with pytest.raises(ParseError):
        formats.parse_certificate(_cert_text(["0x0 0x1"]).replace("type=perfect", "type=bijection"))


@given(
    st.integers(min_value=1, max_value=64),
    st.lists(st.tuples(st.integers(0, 2**64 - 1), st.integers(0, 2**64 - 1)), max_size=20, unique_by=lambda p: p[0]),
)
def test_certificate_text_round_trip_property(n, pairs):
    cert = MatchingCertificate(n, (0,), (1, 2), "injection", tuple(sorted(pairs)))
    text = formats.write_certificate(cert)
    assert formats.parse_certificate(text) == cert
