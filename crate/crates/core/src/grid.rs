//! Sample grids written `start:stop:points:log|linear`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Grid {
    pub fn new(start: f64, stop: f64, points: usize, spacing: Spacing) -> Result<Self> {
        let g = Self {
            start,
            stop,
            points,
            spacing,
        };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::Domain("grid bounds must be finite".into()));
        }
        if self.points == 0 {
            return Err(Error::Domain("grid needs at least one point".into()));
        }
        if self.points > 1 && !(self.start < self.stop) {
            return Err(Error::Domain(format!(
                "grid start {} must be below stop {}",
                self.start, self.stop
            )));
        }
        if self.spacing == Spacing::Log && !(self.start > 0.0) {
            return Err(Error::Domain("log grid needs a positive start".into()));
        }
        Ok(())
    }

    /// Strictly increasing samples; the endpoints are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let last = (self.points - 1) as f64;
        let mut v: Vec<f64> = (0..self.points)
            .map(|i| {
                let f = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + (self.stop - self.start) * f,
                    Spacing::Log => (self.start.ln() + (self.stop.ln() - self.start.ln()) * f).exp(),
                }
            })
            .collect();
        v[0] = self.start;
        v[self.points - 1] = self.stop;
        v
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let bad = |what: &str| Error::Domain(format!("grid {s:?}: {what}; expected start:stop:points:log|linear"));
        if parts.len() != 4 {
            return Err(bad("four fields needed"));
        }
        let start = parts[0].parse::<f64>().map_err(|_| bad("bad start"))?;
        let stop = parts[1].parse::<f64>().map_err(|_| bad("bad stop"))?;
        let points = parts[2].parse::<usize>().map_err(|_| bad("bad point count"))?;
        let spacing = match parts[3] {
            "log" => Spacing::Log,
            "linear" => Spacing::Linear,
            _ => return Err(bad("spacing must be log or linear")),
        };
        Grid::new(start, stop, points, spacing)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sp = match self.spacing {
            Spacing::Log => "log",
            Spacing::Linear => "linear",
        };
        write!(f, "{}:{}:{}:{}", self.start, self.stop, self.points, sp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_form() {
        let g: Grid = "10:1e6:50:log".parse().unwrap();
        let v = g.values();
        assert_eq!(v.len(), 50);
        assert_eq!(v[0], 10.0);
        assert_eq!(v[49], 1e6);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        // equal ratios
        assert!((v[1] / v[0] - v[49] / v[48]).abs() < 1e-12);
    }

    #[test]
    fn linear_and_single_point() {
        let g: Grid = "0.5:15:30:linear".parse().unwrap();
        assert_eq!(g.values()[1], 1.0);
        assert_eq!("7:7:1:log".parse::<Grid>().unwrap().values(), vec![7.0]);
    }

    #[test]
    fn rejects_malformed() {
        for s in [
            "1:2:3",
            "1:2:0:log",
            "5:2:3:log",
            "0:2:3:log",
            "1:2:3:cubic",
            "a:2:3:log",
        ] {
            assert!(s.parse::<Grid>().is_err(), "{s}");
        }
    }

    #[test]
    fn display_roundtrip() {
        let g: Grid = "100:1000000:20:log".parse().unwrap();
        assert_eq!(g.to_string().parse::<Grid>().unwrap(), g);
    }
}
