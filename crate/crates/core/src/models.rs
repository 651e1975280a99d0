//! Reference systems used throughout the tests and the CLI examples.

use crate::vass::Vass;

fn t(src: &str, update: &[i64], dst: &str) -> (String, Vec<i64>, String) {
    (src.to_string(), update.to_vec(), dst.to_string())
}

/// The four-state running example over `x y z`. Transition ids follow the
/// column order: four self-loops, the two inner cycles, then the two
/// linear bridges `s1->s3` (id 8) and `s4->s2` (id 9).
pub fn running_example() -> Vass {
    Vass::new(
        vec!["x", "y", "z"],
        vec![
            t("s1", &[-1, 1, -1], "s1"),
            t("s2", &[1, -1, 1], "s2"),
            t("s3", &[-1, 1, 1], "s3"),
            t("s4", &[1, -1, -1], "s4"),
            t("s2", &[0, 0, -1], "s1"),
            t("s1", &[0, 0, -1], "s2"),
            t("s4", &[0, 0, -1], "s3"),
            t("s3", &[0, 0, -1], "s4"),
            t("s1", &[-1, 0, 0], "s3"),
            t("s4", &[0, 0, 0], "s2"),
        ],
    )
    .expect("running example is well formed")
}

/// Chain of `levels` two-state gadgets whose bounds double per level:
/// variables `x{i}_1, x{i}_2` reach `N^(2^(i-1))`.
pub fn doubling_chain(levels: usize) -> Vass {
    assert!(levels >= 1);
    let n = 2 * levels;
    let var = |i: usize, j: usize| 2 * (i - 1) + (j - 1);
    let mut vars = Vec::with_capacity(n);
    for i in 1..=levels {
        vars.push(format!("x{i}_1"));
        vars.push(format!("x{i}_2"));
    }
    let s = |i: usize, j: usize| format!("s{i}_{j}");
    let mut ts = Vec::new();
    for i in 1..=levels {
        let mut u = vec![0; n];
        u[var(i, 1)] = -1;
        ts.push((s(i, 1), u, s(i, 2)));
        ts.push((s(i, 2), vec![0; n], s(i, 1)));

        let mut u = vec![0; n];
        u[var(i, 1)] = -1;
        u[var(i, 2)] = 1;
        if i < levels {
            u[var(i + 1, 1)] = 1;
            u[var(i + 1, 2)] = 1;
        }
        ts.push((s(i, 1), u, s(i, 1)));

        let mut u = vec![0; n];
        u[var(i, 1)] = 1;
        u[var(i, 2)] = -1;
        ts.push((s(i, 2), u, s(i, 2)));

        if i < levels {
            let mut u = vec![0; n];
            u[var(i, 1)] = -1;
            ts.push((s(i, 1), u, s(i + 1, 1)));
            ts.push((s(i + 1, 2), vec![0; n], s(i, 2)));
        }
    }
    Vass::new(vars, ts).expect("chain is well formed")
}

/// Two states that hand `x` and `y` back and forth while doubling them.
pub fn doubling() -> Vass {
    Vass::new(
        vec!["x", "y"],
        vec![
            t("s1", &[-1, 2], "s1"),
            t("s2", &[2, -1], "s2"),
            t("s1", &[0, 0], "s2"),
            t("s2", &[0, 0], "s1"),
        ],
    )
    .expect("doubling system is well formed")
}

/// Like [`doubling`] but every phase switch spends a counter `c`, so all
/// traces are finite while their length is still exponential in `N`.
pub fn bounded_doubling() -> Vass {
    Vass::new(
        vec!["x", "y", "c"],
        vec![
            t("s1", &[-1, 2, 0], "s1"),
            t("s2", &[2, -1, 0], "s2"),
            t("s1", &[0, 0, -1], "s2"),
            t("s2", &[0, 0, -1], "s1"),
        ],
    )
    .expect("bounded doubling system is well formed")
}

/// One state with a zero-update self-loop.
pub fn zero_loop() -> Vass {
    Vass::new(vec!["x"], vec![t("s", &[0], "s")]).expect("well formed")
}
