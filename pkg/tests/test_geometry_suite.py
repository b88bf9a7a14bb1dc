from reconlab import run_geometry_suite


def test_small_run_passes():
    rep = run_geometry_suite(seed=101, count=30)
    assert rep.passed
    assert rep.tallies["lemma1_equivalence"].failed == 0
    assert rep.tallies["perturbation_gram_law"].passed == 30 * 5
    assert rep.tallies["t_of_lambda_monotone"].flagged == 0


def test_deterministic_tallies():
    a = run_geometry_suite(seed=77, count=12)
    b = run_geometry_suite(seed=77, count=12)
    assert {k: (t.passed, t.failed, t.flagged) for k, t in a.tallies.items()} == \
           {k: (t.passed, t.failed, t.flagged) for k, t in b.tallies.items()}


def test_zero_tolerance_fails():
    rep = run_geometry_suite(seed=5, count=5, resid_tol=0.0)
    assert not rep.passed
