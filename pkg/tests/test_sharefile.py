import pytest
from hypothesis import given, strategies as st

from cess.core import SchemeId
from cess.errors import ShareFormatError
from cess.gf import symbol_bytes
from cess.sharefile import ShareFile, ShareHeader, read_share, scheme_from_header, write_share


@given(
    st.sampled_from(list(SchemeId)),
    st.integers(1, 200), st.integers(0, 50), st.integers(0, 50), st.integers(1, 200),
    st.sampled_from([7, 11, 257, 65537, 2**61 - 1]),
    st.integers(0, 2**64 - 1), st.binary(max_size=40),
)
def test_header_roundtrip(sid, n, r, z, idx, q, length, meta):
    h = ShareHeader(sid, n, r, z, idx, q, length, meta)
    parsed, off = ShareHeader.from_bytes(h.to_bytes())
    assert parsed == h and off == len(h.to_bytes())


@given(st.sampled_from([7, 257, 65537]), st.data())
def test_file_roundtrip(q, data):
    payload = tuple(data.draw(st.lists(st.integers(0, q - 1), max_size=30)))
    f = ShareFile(ShareHeader(SchemeId.CE_RS, 3, 1, 1, 2, q, 5, b"\x01\x00"), payload)
    raw = f.to_bytes()
    assert len(raw) == len(f.header.to_bytes()) + len(payload) * symbol_bytes(q)
    assert ShareFile.from_bytes(raw) == f


def test_layout_bytes():
    h = ShareHeader(SchemeId.CE_SHAMIR, 7, 4, 1, 3, 11, 6, b"\x03\x00\x03\x00\x04\x00\x07\x00")
    raw = h.to_bytes()
    assert raw[:4] == b"CESS" and raw[4] == 1 and raw[5] == 1
    assert raw[6:14] == bytes([7, 0, 4, 0, 1, 0, 3, 0])
    assert int.from_bytes(raw[14:22], "little") == 11
    assert int.from_bytes(raw[22:30], "little") == 6
    assert int.from_bytes(raw[30:32], "little") == 8
    assert scheme_from_header(h).supported_d() == (3, 4, 7)


def test_rejects_corruption():
    f = ShareFile(ShareHeader(SchemeId.CE_RS, 3, 1, 1, 1, 7, 2, b"\x01\x00"), (1, 2))
    raw = f.to_bytes()
    with pytest.raises(ShareFormatError):
        ShareFile.from_bytes(b"XXXX" + raw[4:])
    with pytest.raises(ShareFormatError):
        ShareFile.from_bytes(raw[:10])
    with pytest.raises(ShareFormatError):
        ShareFile.from_bytes(raw[:-1] + b"\x09")  # 9 is not in GF(7)
    with pytest.raises(ShareFormatError):
        ShareFile.from_bytes(raw[:4] + b"\x02" + raw[5:])
    with pytest.raises(ShareFormatError):
        f.blocks(3)


def test_write_is_atomic(tmp_path):
    f = ShareFile(ShareHeader(SchemeId.CE_RS, 3, 1, 1, 1, 7, 2, b"\x01\x00"), (1, 2))
    path = tmp_path / "s.cess"
    write_share(path, f)
    assert read_share(path) == f
    assert [p.name for p in tmp_path.iterdir()] == ["s.cess"]
