import json

import pytest

from ncspheres.cli import COMMAND_OPERATIONS, _parse_expression, build_parser, main
from ncspheres.relations import NCCombination


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


# ---------------------------------------------------------------------------
# subcommands


def test_weingarten_closed_form_at_n5(capsys):
    code, data = run_json(capsys, "weingarten", "--group", "o_n", "--k", "4", "--n", "5")
    assert code == 0
    w = data["weingarten"]
    assert w[0][0] == "3/70" and w[0][1] == "-1/140"  # 1/(5*4*7) * [[6,-1,..]]
    assert all(w[i][i] == "3/70" for i in range(3))


def test_gram_output(capsys):
    code, data = run_json(capsys, "gram", "--group", "u_n", "--alpha", "11**", "--n", "3")
    assert code == 0
    assert data["gram"] == [["9", "3"], ["3", "9"]]
    assert data["row_sums"] == ["12", "12"]


def test_partitions_and_signature(capsys):
    code, data = run_json(capsys, "partitions", "--class", "p2", "--lower", "4")
    assert code == 0 and data["count"] == 3
    code, data = run_json(capsys, "signature", "--partition", "|abab")
    assert data["signature"] == -1 and data["crossings"] == 1


def test_moment_and_trace(capsys):
    code, data = run_json(capsys, "moment", "--group", "o_n", "--n", "3",
                          "--i", "1,1,1,1", "--j", "1,1,1,1")
    assert data["moment"] == "1/5"  # 3/(N(N+2)) at N=3
    code, data = run_json(capsys, "trace", "--sphere", "bar_s_r", "--n", "3",
                          "--i", "1,2,2,1")
    assert data["trace"] == "1/15"


def test_rank(capsys):
    code, data = run_json(capsys, "rank", "--sphere", "bar_s_c", "--n", "3",
                          "--conjugated")
    assert data["rank"] == 9
    code, data = run_json(capsys, "rank", "--sphere", "s_r", "--n", "3")
    assert data["rank"] == 6


def test_classify(capsys):
    code, data = run_json(capsys, "classify", "--perm", "321", "--regime", "real")
    assert code == 0
    assert data["sphere"] == "s_r_star"
    assert data["field"] == "real" and data["level"] == "half"


def test_saturate(capsys):
    code, data = run_json(capsys, "saturate", "--perm", "312", "--regime", "real")
    assert code == 0
    assert "ab=+ba[a≠b]" in data["derived"]


def test_reduce(capsys):
    code, data = run_json(capsys, "reduce", "--expr", "(ab-ba)^2",
                          "--perm", "312", "--regime", "real")
    assert code == 0 and data["zero"]
    code, data = run_json(capsys, "reduce", "--expr", "(ab+ba)^2",
                          "--perm", "312", "--regime", "real_twisted")
    assert data["zero"]


def test_check_relations(capsys):
    code, data = run_json(capsys, "check", "--op", "relations", "--sphere", "bar_s_r",
                          "--model", "clifford", "--n", "3")
    assert code == 0 and data["ok"]


def test_check_intertwiner(capsys):
    code, data = run_json(capsys, "check", "--op", "intertwiner",
                          "--partition", "ab|ba", "--twisted",
                          "--matrix", "signed", "--n", "2")
    assert data["pass_count"] == data["total"] == 8


def test_check_fixed_vector(capsys):
    code, data = run_json(capsys, "check", "--op", "fixed_vector",
                          "--partition", "|abab", "--twisted",
                          "--model", "clifford", "--sphere", "bar_s_r", "--n", "3")
    assert data["ok"]


def test_check_mc_moment(capsys):
    code, data = run_json(capsys, "check", "--op", "mc_moment",
                          "--mc-group", "hyperoctahedral", "--n", "2",
                          "--i", "1,1", "--j", "1,2", "--model", "classical_point")
    assert data["estimate"] == 0.0


def test_verify_quick(capsys):
    code, data = run_json(capsys, "verify", "--suite", "quick")
    assert code == 0
    assert data["passed"] and len(data["results"]) == 13


def test_error_exit_codes(capsys):
    code, _ = run_cli(capsys, "weingarten", "--group", "nope", "--k", "4", "--n", "3")
    assert code == 1
    code, _ = run_cli(capsys, "weingarten", "--group", "o_n", "--k", "4", "--n", "1")
    assert code == 1  # singular Gram matrix
    with pytest.raises(SystemExit) as exc:
        main(["weingarten", "--bad-flag"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# determinism and coverage


def test_byte_identical_output(capsys):
    argv = ["check", "--op", "relations", "--sphere", "s_r",
            "--model", "classical_point", "--n", "4", "--seed", "9"]
    _, first = run_cli(capsys, *argv)
    _, second = run_cli(capsys, *argv)
    assert first == second


def test_csv_format(capsys):
    code, out = run_cli(capsys, "gram", "--group", "o_n", "--k", "2", "--n", "3",
                        "--format", "csv")
    assert code == 0
    assert "3" in out and "{" not in out


OPERATIONS = [
    # partitions
    "enumerate_partitions", "is_member", "join", "kernel",
    "is_constant_on_blocks", "standard_form", "signature", "crossing_count",
    "halfcommuting_membership",
    # tensors
    "delta", "t_map", "xi_vector", "inner_product", "tensor_concat",
    "compose", "involution",
    # weingarten
    "category_pairings", "gram", "weingarten_matrix", "moment",
    "sphere_trace", "gram_rank_products", "row_sum_profile",
    # relations
    "sphere_relations", "group_relations", "relation_sign", "saturate",
    "reduce", "classify_monomial_sphere", "relation_group",
    "comult_sign_check",
    # models
    "sample_classical_point", "twisted_classical_points",
    "antidiagonal_model", "sqrt_positive_model", "check_sphere_relations",
    "enumerate_signed_permutations", "check_intertwiner", "haar_moment_mc",
    "check_fixed_vector_identity", "coaction_check",
]


def test_every_operation_is_reachable():
    covered = {op for ops in COMMAND_OPERATIONS.values() for op in ops}
    missing = [op for op in OPERATIONS if op not in covered]
    assert not missing, f"operations not reachable from any subcommand: {missing}"
    assert set(COMMAND_OPERATIONS) == {
        "partitions", "signature", "gram", "weingarten", "moment", "trace",
        "rank", "classify", "saturate", "reduce", "check", "verify",
    }


def test_expression_parser():
    expr = _parse_expression("(ab-ba)^2")
    assert len(expr.terms) == 4
    expr2 = _parse_expression("2ab - ab - ab")
    assert expr2.is_zero()
    expr3 = _parse_expression("ab*a")
    assert list(expr3.terms) == [((0, False), (1, True), (0, False))]
    with pytest.raises(ValueError):
        _parse_expression("(ab")
