from adhmlab import oracles


def test_partition_numbers():
    assert oracles.partition_counts(10) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_eta_power_is_a_power():
    p = oracles.eta_power(1, 8)
    assert oracles.series_mul(p, p, 8) == oracles.eta_power(2, 8)


def test_hom_dimension_totals_2n():
    for n in range(1, 6):
        for parts in oracles._partitions(n):
            total = sum(oracles.hom_dimension(parts, u, v) for u in range(-n - 1, n + 2) for v in range(-n - 1, n + 2))
            assert total == 2 * n


def test_hom_n1():
    # I = (x, y): phi(x) and phi(y) land on 1, of degrees (-1, 0) and (0, -1)
    assert oracles.hom_dimension((1,), -1, 0) == 1
    assert oracles.hom_dimension((1,), 0, -1) == 1
    assert oracles.hilbert_tangent_weights((1,), 1, 2) == [1, 2]


def test_hilbert_betti():
    assert oracles.hilbert_betti_from_lengths(4) == [1, 1, 2, 1]
    assert oracles.punctual_betti(3, 1, 3) == [1, 1, 1]


def test_framed_series_sums_to_fixed_point_counts():
    for r in range(1, 4):
        counts = oracles.eta_power(r, 5)
        for n, vec in enumerate(oracles.framed_betti_series(r, 5)):
            assert sum(vec) == counts[n]
            assert vec[0] == 1


def test_blowup_rank2_series():
    assert oracles.blowup_rank2_counts(5) == [1, 6, 22, 68, 187, 470]
