use super::{Cell, Pattern, PeriodVector, Tile, TilingSystem};
use crate::error::{Error, Result};

/// A configuration periodic along one vector, stored as its fundamental band.
///
/// With the vector sign-normalized to `p > 0`, the band is
/// `[0,p) × [0,height)` and cell `(x,y)` reads band cell
/// `(x - n·p, y - n·q)` with `n = ⌊x/p⌋`; cells whose reduced row falls
/// outside the band lie outside the configuration. For `p = 0` the band is
/// `[0,width) × [0,q)` and reduction acts on rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicConfig {
    period: PeriodVector,
    extent: i64,
    fundamental: Pattern,
}

impl PeriodicConfig {
    pub fn new(period: PeriodVector, fundamental: Pattern) -> Result<Self> {
        let period = PeriodVector::new(period.p, period.q)?.canonical();
        let Some((lo, hi)) = fundamental.bbox() else {
            return Err(Error::Malformed("empty fundamental band".into()));
        };
        let (w, h) = (hi.x - lo.x + 1, hi.y - lo.y + 1);
        let (want_w, extent) = if period.p != 0 { (period.p, h) } else { (w, h) };
        if lo != Cell::new(0, 0) || w != want_w || fundamental.len() as i64 != w * h {
            return Err(Error::Malformed(
                "fundamental band must fill [0,|p|) × [0,H) anchored at the origin".into(),
            ));
        }
        if period.p == 0 && h != period.q {
            return Err(Error::Malformed(format!(
                "a vertical period needs a band of height {}",
                period.q
            )));
        }
        let extent = if period.p != 0 { extent } else { w };
        Ok(PeriodicConfig {
            period,
            extent,
            fundamental,
        })
    }

    pub fn period(&self) -> PeriodVector {
        self.period
    }

    pub fn fundamental(&self) -> &Pattern {
        &self.fundamental
    }

    /// Band height (or width, for vertical periods).
    pub fn extent(&self) -> i64 {
        self.extent
    }

    pub fn reduce(&self, c: Cell) -> Option<Cell> {
        let PeriodVector { p, q } = self.period;
        if p != 0 {
            let n = c.x.div_euclid(p);
            let j = c.y - n * q;
            (0..self.extent).contains(&j).then(|| Cell::new(c.x - n * p, j))
        } else {
            let n = c.y.div_euclid(q);
            (0..self.extent)
                .contains(&c.x)
                .then(|| Cell::new(c.x, c.y - n * q))
        }
    }

    pub fn lookup(&self, c: Cell) -> Option<&Tile> {
        self.fundamental.get(self.reduce(c)?)
    }

    /// The part of the configuration inside a window.
    pub fn window(&self, origin: Cell, width: i64, height: i64) -> Pattern {
        let mut out = Pattern::new();
        for y in origin.y..origin.y + height {
            for x in origin.x..origin.x + width {
                let c = Cell::new(x, y);
                if let Some(t) = self.lookup(c) {
                    out.insert(c, t.clone());
                }
            }
        }
        out
    }
}

/// Whether no forbidden pattern occurs in the periodic extension.
///
/// Every occurrence is a translate by a multiple of the period of one
/// anchored in the first period column (or row), so those anchors suffice.
pub fn validate_periodic(system: &TilingSystem, config: &PeriodicConfig) -> Result<bool> {
    for (c, t) in config.fundamental.iter() {
        if !system.check_tile(t) {
            return Err(Error::Malformed(format!("unknown tile at {c}")));
        }
    }
    let PeriodVector { p, q } = config.period;
    for rule in system.rules() {
        let (w, h) = rule.extent();
        let (w, h) = (w as i64, h as i64);
        let anchors: Vec<Cell> = if p != 0 {
            let slack = q.abs() * (w / p + 2);
            let ys = (-h - slack)..(config.extent + slack + 1);
            (0..p)
                .flat_map(|x| ys.clone().map(move |y| Cell::new(x, y)))
                .collect()
        } else {
            (0..q)
                .flat_map(|y| (-w..config.extent).map(move |x| Cell::new(x, y)))
                .collect()
        };
        for a in anchors {
            if rule.occurs_at(a, |c| config.lookup(c)) == Some(true) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
