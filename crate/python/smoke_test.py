"""Smoke test for the pyrepcode extension module."""

import pyrepcode as rc


def main():
    f = rc.Field(2, 6)
    assert f.order == 64
    a = 37
    assert f.mul(a, f.inv(a)) == 1
    assert f.add(a, a) == 0

    code = rc.RepeatedCode(63, 14, 5, field="2^6")
    assert (code.n, code.k, code.l) == (63, 14, 5)
    message = list(range(1, 15))
    rows = code.encode(message)
    rows[0][3] ^= 1
    rows[2][10] ^= 5
    rows[4][10] ^= 7
    for strategy, b in [("count", None), ("threshold", 3)]:
        out = code.decode(rows, strategy=strategy, b=b)
        assert out and out[0].message == message, (strategy, out)
        assert out[0].distance == 3

    small = rc.RepeatedCode(3, 1, 5, field="3", points=[0, 1, 2])
    word = [[0, 0, 0], [0, 0, 0], [0, 0, 1], [0, 1, 1], [0, 2, 2]]
    assert small.assign(word) == [(0, 0, 5), (1, 0, 3), (1, 1, 1), (1, 2, 1), (2, 0, 2), (2, 1, 2), (2, 2, 1)]
    assert small.assign(word, strategy="threshold", b=3) == [(0, 0, 1), (1, 0, 1)]

    assert rc.bound_assignment2(63, 14, 5, 3) == 149
    report = {name: value for name, value, _, _ in rc.bound_report(63, 54, 5)}
    assert report["corollary"] == "74"

    successes, trials, mean_list, median = rc.run_trials(63, 14, 5, 187, 50, seed=1, strategy="threshold", b=3)
    assert trials == 50 and successes >= 45
    assert median > 0

    try:
        f.inv(0)
    except ZeroDivisionError:
        pass
    else:
        raise AssertionError("inverse of zero should raise")
    print("smoke test passed")


if __name__ == "__main__":
    main()
