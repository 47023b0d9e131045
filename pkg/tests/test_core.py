import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fslz.core import (
    MAGIC,
    Algorithm,
    Alphabet,
    BitReader,
    BitStream,
    BitWriter,
    Container,
    SymbolSeq,
    bit_width,
    container_size,
    pack_symbols,
    read_container,
    unpack_symbols,
    write_container,
)
from fslz.exceptions import (
    BadMagicError,
    ContainerError,
    PayloadExhaustedError,
    TruncatedPayloadError,
    UnsupportedVersionError,
)
from oracles import clog2

HEADER_BYTES = 4 + 1 + 1 + 4 + 8 + 1 + 8


@pytest.mark.parametrize("A", [2, 3, 4, 5, 255, 256, 257, 1 << 20])
def test_bits_per_symbol(A):
    assert Alphabet.of_size(A).bits_per_symbol == clog2(A)
    assert bit_width(A) >= 1


def test_alphabet_rejects_duplicates_and_singletons():
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(("a",))


def test_alphabet_encode_decode():
    a = Alphabet(("a", "b", "c"))
    seq = a.encode("cab")
    assert seq.data == (2, 0, 1)
    assert "".join(a.decode(seq)) == "cab"
    with pytest.raises(ValueError):
        a.encode("d")


def test_symbolseq_range_checked():
    with pytest.raises(ValueError):
        SymbolSeq(Alphabet.binary(), (0, 2))


def test_pack_binary_identity():
    bits = pack_symbols(SymbolSeq(Alphabet.binary(), (1, 0, 1)))
    assert bits.bit_length == 3
    assert bits.to_bits() == [1, 0, 1]


def test_pack_ternary_uses_two_bits():
    bits = pack_symbols(SymbolSeq(Alphabet.of_size(3), (2,)))
    assert bits.to_bits() == [1, 0]


def test_unpack_length_mismatch():
    with pytest.raises(ValueError):
        unpack_symbols(BitStream.from_bits([1, 0, 1]), Alphabet.of_size(3), 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 257).flatmap(
    lambda A: st.tuples(st.just(A), st.lists(st.integers(0, A - 1), max_size=2000))))
def test_pack_roundtrip(args):
    A, data = args
    alpha = Alphabet.of_size(A)
    seq = SymbolSeq(alpha, data)
    assert unpack_symbols(pack_symbols(seq), alpha, len(data)) == seq


def test_pack_roundtrip_long():
    alpha = Alphabet.of_size(7)
    data = [(i * 5 + i // 3) % 7 for i in range(10_000)]
    seq = SymbolSeq(alpha, data)
    assert unpack_symbols(pack_symbols(seq), alpha, len(data)) == seq


def test_bitwriter_msb_first():
    w = BitWriter()
    w.write(0b101, 3)
    w.write(0b1, 1)
    w.write(0b11, 2)
    s = w.getvalue()
    assert s.data == bytes([0b10111100])
    assert s.bit_length == 6


def test_bitwriter_rejects_overflow():
    with pytest.raises(ValueError):
        BitWriter().write(4, 2)


@given(st.lists(st.tuples(st.integers(0, 40)).flatmap(
    lambda t: st.tuples(st.integers(0, (1 << t[0]) - 1 if t[0] else 0), st.just(t[0]))),
    max_size=200))
def test_bit_reader_writer_roundtrip(items):
    w = BitWriter()
    for v, width in items:
        w.write(v, width)
    r = BitReader(w.getvalue())
    assert [r.read(width) for _, width in items] == [v for v, _ in items]
    r.expect_end()


def test_reader_exhaustion():
    r = BitReader(BitStream.from_bits([1, 1]))
    r.read(1)
    with pytest.raises(PayloadExhaustedError):
        r.read(2)


def test_bitstream_padding_must_be_zero():
    with pytest.raises(ValueError):
        BitStream(bytes([0b10000001]), 1)


def test_empty_container_layout():
    c = Container(Algorithm.LZ78, 2, 0)
    raw = write_container(c)
    assert raw[:4] == MAGIC == b"\x46\x53\x4c\x5a"
    assert len(raw) == HEADER_BYTES
    assert raw[4] == 1 and raw[5] == Algorithm.LZ78
    assert read_container(raw) == c


def test_param_block_layout():
    c = Container(Algorithm.LZ78_LRU, 2, 5, {"D": 256, "L_max": 64, "recency": 0})
    raw = write_container(c)
    assert raw[18] == 3
    assert raw[19] == 1 and int.from_bytes(raw[20:28], "big") == 256
    assert raw[28] == 2 and int.from_bytes(raw[29:37], "big") == 64
    assert read_container(raw) == c


def test_ten_bit_payload_padding():
    payload = BitStream.from_bits([1] * 10)
    c = Container(Algorithm.LZ78, 2, 3, {}, payload)
    raw = write_container(c)
    body = raw[HEADER_BYTES:]
    assert len(body) == 2
    assert body[1] & 0b00111111 == 0
    assert body == bytes([0xFF, 0b11000000])
    assert int.from_bytes(raw[HEADER_BYTES - 8:HEADER_BYTES], "big") == 10


def test_bad_magic():
    raw = bytearray(write_container(Container(Algorithm.LZ78, 2, 0)))
    raw[0] ^= 0xFF
    with pytest.raises(BadMagicError, match="bad magic"):
        read_container(bytes(raw))


def test_unknown_version():
    raw = bytearray(write_container(Container(Algorithm.LZ78, 2, 0)))
    raw[4] = 9
    with pytest.raises(UnsupportedVersionError):
        read_container(bytes(raw))


def test_truncated_payload():
    c = Container(Algorithm.LZ78, 2, 3, {}, BitStream.from_bits([1] * 20))
    raw = write_container(c)
    with pytest.raises(TruncatedPayloadError, match="truncated payload"):
        read_container(raw[:-1])


def test_errors_are_distinct():
    assert len({BadMagicError, UnsupportedVersionError, TruncatedPayloadError}) == 3
    for cls in (BadMagicError, UnsupportedVersionError, TruncatedPayloadError):
        assert issubclass(cls, ContainerError)


@pytest.mark.parametrize("algo,params", [
    (Algorithm.LZ78, {"D": 4}),
    (Algorithm.LZ78_LRU, {"D": 4}),
    (Algorithm.LZ78_LRU, {"D": 0, "L_max": 1, "recency": 0}),
    (Algorithm.LZ77W, {"D": 4, "L_max": 2, "window": 9}),
    (Algorithm.FSDL, {"D": 4, "L_max": 2, "recency": 0, "L": 2, "d_max_num": 1,
                      "d_max_den": 0}),
])
def test_inconsistent_params_rejected(algo, params):
    with pytest.raises(ContainerError):
        write_container(Container(algo, 2, 0, params))


_valid_params = {
    Algorithm.LZ78: st.just({}),
    Algorithm.LZW: st.just({}),
    Algorithm.LZ78_LRU: st.fixed_dictionaries({
        "D": st.integers(1, 1 << 40), "L_max": st.integers(1, 1 << 20),
        "recency": st.integers(0, 1)}),
    Algorithm.LZW_LRU: st.fixed_dictionaries({
        "D": st.integers(0, 1 << 40), "L_max": st.integers(1, 1 << 20),
        "recency": st.integers(0, 1)}),
    Algorithm.LZ77W: st.tuples(st.integers(1, 1 << 20), st.integers(1, 1 << 10)).map(
        lambda t: {"D": t[0], "L_max": t[1], "window": t[0] * t[1]}),
    Algorithm.FSDL: st.fixed_dictionaries({
        "D": st.integers(1, 1 << 40), "L_max": st.integers(1, 100),
        "recency": st.integers(0, 1), "L": st.integers(1, 8),
        "d_max_num": st.integers(0, 10), "d_max_den": st.integers(1, 10)}),
}


@st.composite
def containers(draw):
    algo = draw(st.sampled_from(list(Algorithm)))
    bits = draw(st.lists(st.integers(0, 1), max_size=300))
    return Container(algo, draw(st.integers(2, (1 << 32) - 1)),
                     draw(st.integers(0, (1 << 64) - 1)), draw(_valid_params[algo]),
                     BitStream.from_bits(bits))


@settings(max_examples=200)
@given(containers())
def test_container_roundtrip_and_size(c):
    raw = write_container(c)
    assert read_container(raw) == c
    assert len(raw) == container_size(c)
    assert write_container(read_container(raw)) == raw
