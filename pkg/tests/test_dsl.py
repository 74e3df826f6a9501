from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from golden import UNIFORM_PAULI_TRACE
from qect.circuits import noisy_teleportation, teleportation
from qect.dsl import (
    LexError,
    ParseError,
    SignatureError,
    elaborate,
    parse_circuit,
    parse_matrix,
    run_circuit,
    tokenize_line,
)
from qect.poly import specialize
from qect.tensor import QUBIT, gate, identity_tensor, parse_tensor

CIRCUITS = Path(__file__).resolve().parent.parent / "circuits"


def read(name):
    return (CIRCUITS / name).read_text()


def test_teleportation_file_is_identity():
    assert run_circuit(read("teleportation.qc")) == identity_tensor((QUBIT,))
    assert run_circuit(read("teleportation.qc")) == teleportation()


def test_noisy_teleportation_file():
    assert run_circuit(read("noisy_teleportation.qc")) == noisy_teleportation()


def test_uniform_pauli_file():
    t = run_circuit(read("pauli_noise.qc"))
    expect = parse_tensor(UNIFORM_PAULI_TRACE, (QUBIT,), (QUBIT,))
    # the file fixes the identity weight to 1
    assert t == expect.map(lambda p: specialize(p, {"w": 1}))


@pytest.mark.parametrize("name", ["teleportation.qc", "noisy_teleportation.qc", "pauli_noise.qc"])
def test_pretty_round_trip(name):
    ir = parse_circuit(read(name))
    assert parse_circuit(ir.pretty()) == ir


def test_unknown_gate_names_the_token():
    with pytest.raises(ParseError) as info:
        run_circuit("input qubit q\ngate FOO q\n")
    assert "FOO" in str(info.value)
    assert info.value.line == 2


def test_classical_wire_into_quantum_gate():
    with pytest.raises(SignatureError) as info:
        run_circuit("input qubit q\nmeasure Z q -> b\ngate H b\n")
    assert info.value.line == 3


def test_error_kinds_are_distinct():
    with pytest.raises(LexError):
        parse_circuit('input qubit "q\n')
    with pytest.raises(LexError):
        parse_circuit("unitary [[1, 0], [0, 1] q\n")
    with pytest.raises(ParseError):
        parse_circuit("frobnicate q\n")
    with pytest.raises(ParseError):
        parse_circuit("input qubit q\nif b\ngate H q\n")
    assert not issubclass(LexError, ParseError) and not issubclass(SignatureError, ParseError)


def test_wire_reuse_and_liveness():
    with pytest.raises(SignatureError):
        run_circuit("input qubit q\nprep 0 q\n")
    with pytest.raises(SignatureError):
        run_circuit("input qubit q\nmeasure Z q -> b\ngate H q\n")


def test_trace_each_noise_wire_once():
    text = "input qubit q\nnoise pauli z q as=e\ntrace e\ntrace e\n"
    with pytest.raises(SignatureError):
        run_circuit(text)


def test_unitary_literal():
    t = run_circuit("input qubit q\nunitary [[1/sqrt(2), 1/sqrt(2)], [1/sqrt(2), -1/sqrt(2)]] q\n")
    assert t == gate("H")
    assert parse_matrix("[[1, 0], [0, i]]")[1, 1] == 1j
    with pytest.raises(ValueError):
        parse_matrix("[[__import__('os')]]")


def test_projective_measurement_statement():
    t = run_circuit("input qubit a b\nproject ZZ a b -> s\noutput s a b\n")
    assert [w.kind for w in t.out_sig] == ["c", "q", "q"]


def test_select_noise_and_partial_trace():
    text = "input qubit q\nnoise select q I=w X=x Z=0 Y=0 as=e\nnoise pauli z q as=f\ntrace e\n"
    t = elaborate(parse_circuit(text))
    assert [w.kind for w in t.in_sig] == ["q", "n"]
    t2 = elaborate(parse_circuit(text), trace=True)
    assert [w.kind for w in t2.in_sig] == ["q"]


def test_classical_statement_and_if_block():
    text = (
        "input bit a b\ninput qubit q\nclassical xor a b -> c\n"
        "if c\n  gate X q\nend\n"
    )
    t = run_circuit(text)
    assert [w.kind for w in t.in_sig] == ["c", "c", "q"]
    # the control bit is consumed by the block
    assert [w.kind for w in t.out_sig] == ["q"]
    with pytest.raises(SignatureError):
        run_circuit("input bit c\ninput qubit q\nif c\n  measure Z q -> d\nend\n")


def test_tokenizer_keeps_groups():
    toks = tokenize_line('noise bitflip r b identity="1 - r" # comment', 1)
    assert [t.text for t in toks] == ["noise", "bitflip", "r", "b", "identity=1 - r"]


names = st.sampled_from(["H", "S", "X", "Z", "SDG"])


@settings(max_examples=40)
@given(st.lists(st.tuples(names, st.sampled_from(["a", "b"])), max_size=6))
def test_random_gate_sequences_round_trip(ops):
    text = "input qubit a b\n" + "".join(f"gate {g} {w}\n" for g, w in ops) + "gate CNOT a b\n"
    ir = parse_circuit(text)
    assert parse_circuit(ir.pretty()) == ir
    assert elaborate(parse_circuit(ir.pretty())) == elaborate(ir)
