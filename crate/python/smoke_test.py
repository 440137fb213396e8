"""Exercises the propmap extension end to end; exits non-zero on failure."""

import propmap


def main():
    qs = propmap.enumerate_linear_qp()
    assert len(qs) == 9, qs

    report = propmap.classify_degree2_r2()
    assert len(report["representatives"]) == 2

    found = propmap.brute_force_search((2, 2, 3, 3), 2, ["1", "2"])
    assert len(found) == 2

    g = propmap.BallMap((2, 2, 3, 3), ["z1^2", "z1*z2", "z2*z3"], ["z3^2", "z3*z4", "z1*z4"])
    assert propmap.BallMap.from_json(g.to_json()) == g
    assert g.check()["proper"]

    outcome, f = propmap.solve_induced(g)
    assert outcome["status"] == "Unique", outcome
    assert f.texts() == [["z1^2", "z1*z2", "z2"], ["z1*z3", "z2*z3", "z4"], ["z3", "z4", "0"]]
    assert propmap.residual_zero(g, f)

    degree_one = propmap.BallMap((2, 2, 3, 3), ["z1", "z2", "0"], ["z3", "z4", "0"])
    outcome, _ = propmap.solve_induced(degree_one)
    assert outcome["status"] == "Underdetermined"
    assert outcome["free_entries"] == [[2, 0], [2, 1], [2, 2]]

    for check in propmap.verify_numeric(f, g, trials=200, seed=1):
        assert check["verdict"] == "Pass", check

    z = [[0.3, 0.1j], [0.0, 0.2]]
    assert propmap.omega_margin(f.eval(z)) > 0

    assert propmap.catalog_verify("whitney_2x2")["matches"]
    degree3 = propmap.catalog_verify("degree3_2244")
    assert degree3["solver_residual_zero"] and degree3["corrected_p"]
    _, ft = propmap.catalog_get("family_t_2244", "1/4")
    assert ft.shape == (4, 4)
    try:
        propmap.catalog_get("family_t_2244", "1")
    except ValueError:
        pass
    else:
        raise AssertionError("t = 1 accepted")

    assert propmap.lemma_harness("3.5", trials=200)["violations"] == []
    assert propmap.shilov_obstruction_demo([0.5, 0, 0], samples=50)["obstruction_found"]
    assert not propmap.shilov_obstruction_demo([0, 0, 0.9j], samples=50)["obstruction_found"]
    print("smoke test passed")


if __name__ == "__main__":
    main()
