//! Published density errors of the smooth accuracy studies and the
//! comparison of computed tables against them.

use srhd::diagnostics::ErrorRow;

/// Printed `l¹` and `l²` density errors at successive resolutions.
#[derive(Debug, Clone, Copy)]
pub struct Published {
    pub ns: &'static [usize],
    pub l1: &'static [f64],
    pub l2: &'static [f64],
}

impl Published {
    /// The first `k` rows.
    pub fn first(&self, k: usize) -> Published {
        Published { ns: &self.ns[..k], l1: &self.l1[..k], l2: &self.l2[..k] }
    }
}

pub const NS_1D: &[usize] = &[10, 20, 40, 80, 160];
pub const NS_2D: &[usize] = &[10, 20, 40];

pub const SMOOTH1D_EC6_SSP: Published = Published {
    ns: NS_1D,
    l1: &[1.7104e-04, 3.4854e-06, 5.8181e-08, 9.2642e-10, 1.4706e-11],
    l2: &[9.5550e-05, 2.0375e-06, 3.4831e-08, 5.5718e-10, 8.7673e-12],
};
pub const SMOOTH1D_ES5_SSP: Published = Published {
    ns: NS_1D,
    l1: &[6.0735e-03, 2.9496e-04, 1.0087e-05, 3.5354e-07, 1.1270e-08],
    l2: &[2.6810e-03, 1.4836e-04, 5.4064e-06, 1.9520e-07, 6.1611e-09],
};
pub const SMOOTH1D_EC6_RRK: Published = Published {
    ns: NS_1D,
    l1: &[1.7104e-04, 3.4849e-06, 5.8177e-08, 9.2631e-10, 1.4537e-11],
    l2: &[9.5550e-05, 2.0375e-06, 3.4831e-08, 5.5718e-10, 8.7578e-12],
};
pub const SMOOTH1D_ES5_RRK: Published = Published {
    ns: NS_1D,
    l1: &[6.0732e-03, 2.9494e-04, 1.0087e-05, 3.5353e-07, 1.1270e-08],
    l2: &[2.6809e-03, 1.4835e-04, 5.4063e-06, 1.9520e-07, 6.1610e-09],
};

pub const SMOOTH2D_EC6_RC: Published =
    Published { ns: NS_2D, l1: &[1.3460e-04, 2.6420e-06, 4.4528e-08], l2: &[3.0063e-05, 6.2944e-07, 1.0725e-08] };
pub const SMOOTH2D_EC6_IP: Published =
    Published { ns: NS_2D, l1: &[1.3452e-04, 2.6397e-06, 4.4492e-08], l2: &[3.0053e-05, 6.2929e-07, 1.0723e-08] };
pub const SMOOTH2D_EC6_TM: Published =
    Published { ns: NS_2D, l1: &[1.3449e-04, 2.6391e-06, 4.4477e-08], l2: &[3.0044e-05, 6.2907e-07, 1.0719e-08] };

/// Errors below this are at the double-precision floor and are not
/// compared, nor are the orders computed from them.
pub const ERROR_FLOOR: f64 = 1e-12;

/// Outcome of comparing a computed table with a published one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableCheck {
    /// Largest `max(e/e_pub, e_pub/e)` over compared entries.
    pub error_ratio: f64,
    /// Largest `|order − order_pub|` over compared entries.
    pub order_deviation: f64,
}

impl TableCheck {
    pub fn within(&self, factor: f64, order_tol: f64) -> bool {
        self.error_ratio <= factor && self.order_deviation <= order_tol
    }
}

fn order(e0: f64, e1: f64, n0: usize, n1: usize) -> f64 {
    (e0 / e1).ln() / (n1 as f64 / n0 as f64).ln()
}

/// Compares errors and observed orders, with published orders recomputed
/// from the printed errors.
pub fn compare(rows: &[ErrorRow], published: &Published) -> TableCheck {
    assert_eq!(rows.len(), published.ns.len(), "table lengths differ");
    let mut check = TableCheck { error_ratio: 1.0, order_deviation: 0.0 };
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.n, published.ns[i]);
        for (e, e_pub) in [(row.l1, published.l1[i]), (row.l2, published.l2[i])] {
            if e_pub >= ERROR_FLOOR {
                check.error_ratio = check.error_ratio.max((e / e_pub).max(e_pub / e));
            }
        }
        if i == 0 {
            continue;
        }
        let pairs = [
            (row.l1_order, published.l1[i - 1], published.l1[i]),
            (row.l2_order, published.l2[i - 1], published.l2[i]),
        ];
        for (computed, p0, p1) in pairs {
            if p1 < ERROR_FLOOR {
                continue;
            }
            let expected = order(p0, p1, published.ns[i - 1], published.ns[i]);
            let dev = computed.map_or(f64::INFINITY, |o| (o - expected).abs());
            check.order_deviation = check.order_deviation.max(dev);
        }
    }
    check
}

/// Range of the observed orders from the second row on, over both norms.
pub fn order_range(rows: &[ErrorRow]) -> (f64, f64) {
    let orders: Vec<f64> = rows.iter().skip(1).flat_map(|r| [r.l1_order, r.l2_order]).flatten().collect();
    let lo = orders.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = orders.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}
