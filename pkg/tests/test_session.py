import copy
import itertools
import json
from fractions import Fraction
from pathlib import Path

import pytest

import mctx
from mctx.errors import ParseError, SessionError, TypeMismatch
from mctx.lens import Get, Send, lens_close
from mctx.protocol import closed_from_json, closed_to_json, load_protocol, parse_fraction, variant_party
from mctx.session import (
    Party,
    PolarityWarning,
    deterministic_view,
    dinaturality_refactor_check,
    fill_channels,
    interleave,
    outcome_distribution,
    parse_session,
    tensor_sessions,
    type_check,
)
from mctx.theory import FinFn

TCP = Path(mctx.__file__).parent / "data" / "tcp.json"


def tcp_data():
    return json.loads(TCP.read_text())


def closed(proto):
    lenses = [type_check(p) for p in proto.parties]
    combined = interleave(lenses[0], lenses[1])
    return fill_channels(combined, [proto.morphisms[c] for c in proto.channels])


# -- an independent handshake model --------------------------------------------------
#
# Messages are (seq, ack) pairs; a lost message arrives as (0, 0).  Each party
# either advances on the expected message or falls back to its idle state.

CLIENT, SERVER, MSG = ["0", "10", "11"], ["0", "20", "21"], list(itertools.product([0, 10, 11], [0, 20, 21]))


def syn(c):
    return 10, (10, 0)


def synack(s, m):
    if m[0] == 10:
        return 20, (11, 20)
    return 0, (0, 0)


def ack(c, m):
    if c == 10 and m[0] == 11:
        return 11, (11, m[1] + 1 if m[1] else 0)
    return 0, (0, 0)


def recv(s, m):
    return 21 if (s, m[1]) == (20, 21) else 0


def handshake(lost):
    """Final (client, server) when the messages flagged in ``lost`` are dropped."""
    deliver = lambda k, m: (0, 0) if lost[k] else m
    c, m = syn(0)
    s, m = synack(0, deliver(0, m))
    c, m = ack(c, deliver(1, m))
    s = recv(s, deliver(2, m))
    return c, s


def model_distribution(p):
    out = {}
    for lost in itertools.product([False, True], repeat=3):
        w = Fraction(1)
        for l in lost:
            w *= p if l else 1 - p
        key = handshake(lost)
        out[key] = out.get(key, 0) + w
    return {k: v for k, v in out.items() if v}


def test_tables_agree_with_model_on_reachable_inputs():
    proto = load_protocol(TCP)
    ms = {k: v for k, v in proto.morphisms.items()}
    msg = lambda m: MSG.index(m)

    def table(m):
        assert m.is_deterministic
        return [r[0][0] for r in m.rows]

    c, m = syn(0)
    assert table(ms["SYN"])[0] == CLIENT.index(str(c)) * 9 + msg(m)
    for incoming in [(10, 0), (0, 0)]:
        s, out = synack(0, incoming)
        assert table(ms["SYNACK"])[msg(incoming)] == SERVER.index(str(s)) * 9 + msg(out)
    for incoming in [(11, 20), (0, 0)]:
        c, out = ack(10, incoming)
        assert table(ms["ACK"])[9 + msg(incoming)] == CLIENT.index(str(c)) * 9 + msg(out)
    for s0 in (0, 20):
        for incoming in [(11, 21), (0, 0)]:
            s = recv(s0, incoming)
            assert table(ms["RECV"])[SERVER.index(str(s0)) * 9 + msg(incoming)] == SERVER.index(str(s))


@pytest.mark.parametrize("p", [Fraction(0), Fraction(1, 10), Fraction(1, 2), Fraction(1)])
def test_distribution_matches_model(p):
    proto = load_protocol(TCP, noise=p)
    dist = outcome_distribution(closed(proto), 0)
    expected = {CLIENT.index(str(c)) * 3 + SERVER.index(str(s)): w for (c, s), w in model_distribution(p).items()}
    assert dist == expected
    assert sum(dist.values()) == 1


def test_noise_one_tenth_exact():
    dist = outcome_distribution(closed(load_protocol(TCP, noise="1/10")), 0)
    assert dist == {0: Fraction(19, 100), 6: Fraction(81, 1000), 8: Fraction(729, 1000)}


# -- typing ---------------------------------------------------------------------------


def test_tcp_parties_type_check():
    proto = load_protocol(TCP)
    client, server = proto.parties
    lc, ls = type_check(client), type_check(server)
    assert lc.stages == ls.stages == 3
    assert lc.outer == (("Client",), ("Client",))
    assert ls.residuals == (("Server",),) * 3


def test_combined_stage_types():
    proto = load_protocol(TCP)
    s = tensor_sessions(proto.parties[0].session, proto.parties[1].session)
    assert str(s) == "(!Msg * ?Msg) < (?Msg * !Msg) < (!Msg * ?Msg)"
    assert s.holes == ((("Msg",), ("Msg",)),) * 3


def test_swapped_polarity_fails_at_stage_one():
    data = tcp_data()
    data["parties"][1]["session"] = "!Msg < ?Msg < !Msg"
    proto_data = copy.deepcopy(data)
    with pytest.raises(SessionError) as info:
        type_check(load_protocol(proto_data).parties[1])
    assert info.value.stage == 1


def test_wrong_step_count():
    data = tcp_data()
    data["parties"][0]["steps"] = data["parties"][0]["steps"][:3]
    with pytest.raises(SessionError):
        type_check(load_protocol(data).parties[0])


def test_parse_session_forms():
    s = parse_session("(!A ⊗ ?B) ◁ ?C")
    assert s.stages == ((Send(("A",)), Get(("B",))), (Get(("C",)),))
    assert parse_session(str(s)) == s
    for bad in ["", "A", "!A < ", "!A * ?"]:
        with pytest.raises(ParseError):
            parse_session(bad)


def test_polarity_warning():
    t = FinFn.of(S=2, X=2)
    f = t.morphism(("S",), ("S", "X"), [0, 3])
    p = Party("a", parse_session("!X"), (f, t.morphism(("S",), ("S",), [0, 1])), ("S",), ("S",))
    l = type_check(p)
    with pytest.warns(PolarityWarning):
        interleave(l, l, p.session, p.session)


def test_interleave_rejects_stage_mismatch():
    proto = load_protocol(TCP)
    l = type_check(proto.parties[0])
    short = type_check(Party("x", parse_session("!Msg"), (proto.morphisms["SYN"], proto.morphisms["ID_CLIENT"]), ("Client",), ("Client",)))
    with pytest.raises(TypeMismatch):
        interleave(l, short)
    with pytest.raises(TypeMismatch):
        fill_channels(l, [])


# -- variants ------------------------------------------------------------------------


def test_identity_channel_finfn_variant():
    data = tcp_data()
    data["theory"] = "finfn"
    data["morphisms"]["NOISE"] = {"kind": "identity", "obj": ["Msg"]}
    proto = load_protocol(data)
    m = closed(proto)
    assert m.table[0] == 2 * 3 + 2


def test_finfn_rejects_fractional_noise():
    data = tcp_data()
    data["theory"] = "finfn"
    with pytest.raises(ParseError):
        load_protocol(data, noise="1/10")
    assert outcome_distribution(closed(load_protocol(data, noise="1")), 0) == {0: 1}


def test_single_trivial_party():
    data = {
        "schema": "mctx/1",
        "objects": {"S": 2, "X": 1},
        "morphisms": {"OUT": {"kind": "finfn", "dom": ["S"], "cod": ["S", "X"], "table": [1, 0]},
                      "KEEP": {"kind": "identity", "obj": ["S"]},
                      "CH": {"kind": "finfn", "dom": ["X"], "cod": [], "table": [0]}},
        "parties": [{"name": "solo", "session": "!X", "state": ["S"], "steps": ["OUT", "KEEP"]}],
        "channels": ["CH"],
    }
    proto = load_protocol(data)
    l = type_check(proto.parties[0])
    assert lens_close(l, proto.morphisms["CH"]).table == (1, 0)


def test_compose_roundtrip_through_json():
    proto = load_protocol(TCP, noise="1/10")
    m = closed(proto)
    back = closed_from_json(json.loads(json.dumps(closed_to_json(proto, m))))
    assert back.dom == back.cod == ("Client", "Server")
    assert back.rows == m.rows
    assert len(back.rows) == 9


def test_fraction_parsing():
    assert parse_fraction("1/10") == parse_fraction("0.1") == Fraction(1, 10)
    for bad in [0.1, True, "x", "1/0"]:
        with pytest.raises(ParseError):
            parse_fraction(bad)


# -- refactorings --------------------------------------------------------------------


def test_shipped_refactoring_is_equivalent():
    proto = load_protocol(TCP)
    base, variant = variant_party(proto, proto.refactorings[0])
    verdict = dinaturality_refactor_check(base, variant)
    assert verdict.equivalent and verdict.method == "canonical"


def perturbed(index, was, now):
    data = tcp_data()
    table = list(data["morphisms"]["ACK_V"]["table"])
    assert table[index] == was
    table[index] = now
    data["morphisms"]["ACK_BAD"] = dict(data["morphisms"]["ACK_V"], table=table)
    data["refactorings"][0]["steps"] = ["SYN_V", "ID_CLIENT_ACK", "ACK_BAD", "ID_CLIENT"]
    proto = load_protocol(data)
    return variant_party(proto, proto.refactorings[0])


def test_perturbed_final_state_is_separated():
    # client 10 with stored ack 0 hearing (11, 20) now ends in state 0 instead of 11
    base, variant = perturbed(1 * 27 + 0 * 9 + 7, 26, 8)
    verdict = dinaturality_refactor_check(base, variant)
    assert not verdict.equivalent
    assert verdict.separating is not None
    a, b = (lens_close(deterministic_view(type_check(p)), *verdict.separating) for p in (base, variant))
    assert a != b


def test_perturbed_last_message_is_unequal_but_unobservable():
    """The last message leaves into a hole with unit output, so no filler sees it;
    the quotient still tells the two apart."""
    base, variant = perturbed(1 * 27 + 0 * 9 + 7, 26, 24)
    verdict = dinaturality_refactor_check(base, variant)
    assert not verdict.equivalent
    assert verdict.separating is None
    assert verdict.note == "canonical view at stage 3 differs"


def test_stochastic_refactor_uses_probes():
    data = tcp_data()
    data["morphisms"]["COIN"] = {"kind": "finstoch", "dom": ["Client"], "cod": ["Client"],
                                 "matrix": [["1/2", "1/2", "0/1"], ["0/1", "1/1", "0/1"], ["0/1", "0/1", "1/1"]]}
    data["parties"][0]["steps"] = ["SYN", "ID_CLIENT", "ACK", "COIN"]
    data["refactorings"][0]["steps"] = ["SYN_V", "ID_CLIENT_ACK", "ACK_V", "COIN"]
    proto = load_protocol(data)
    verdict = dinaturality_refactor_check(*variant_party(proto, proto.refactorings[0]))
    assert verdict.equivalent and verdict.method == "probe"


def test_outcome_distribution_from_a_distribution():
    m = closed(load_protocol(TCP, noise="1/10"))
    half = outcome_distribution(m, {0: Fraction(1, 2), 4: Fraction(1, 2)})
    assert sum(half.values()) == 1
    with pytest.raises(ValueError):
        outcome_distribution(m, {0: Fraction(1, 2)})
