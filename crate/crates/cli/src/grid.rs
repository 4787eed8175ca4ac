use std::str::FromStr;

/// `start:stop:step`, inclusive of `stop`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearGrid {
    pub start: u64,
    pub stop: u64,
    pub step: u64,
}

/// `start:stop:factor`: start, round(start·factor), round(start·factor²), … up to `stop`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricGrid {
    pub start: u64,
    pub stop: u64,
    pub factor: f64,
}

fn three_fields(s: &str) -> Result<[&str; 3], String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts[..] {
        [a, b, c] => Ok([a.trim(), b.trim(), c.trim()]),
        _ => Err(format!("expected start:stop:step, got {s:?}")),
    }
}

fn positive(field: &str, name: &str) -> Result<u64, String> {
    match field.parse::<u64>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("{name} must be a positive integer, got {field:?}")),
    }
}

impl FromStr for LinearGrid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let [a, b, c] = three_fields(s)?;
        Ok(LinearGrid {
            start: positive(a, "start")?,
            stop: positive(b, "stop")?,
            step: positive(c, "step")?,
        })
    }
}

impl FromStr for GeometricGrid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let [a, b, c] = three_fields(s)?;
        let factor: f64 = c.parse().map_err(|_| format!("factor must be a number, got {c:?}"))?;
        if !(factor > 1.0 && factor.is_finite()) {
            return Err(format!("factor must exceed 1, got {c}"));
        }
        Ok(GeometricGrid { start: positive(a, "start")?, stop: positive(b, "stop")?, factor })
    }
}

impl LinearGrid {
    pub fn points(&self) -> Vec<u64> {
        (self.start..=self.stop).step_by(self.step as usize).collect()
    }
}

impl GeometricGrid {
    pub fn points(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut k = 0;
        loop {
            let x = (self.start as f64 * self.factor.powi(k)).round();
            if x > self.stop as f64 {
                break;
            }
            out.push(x as u64);
            k += 1;
        }
        out
    }
}

/// Union of the requested grids, sorted and deduplicated.
pub fn merge(linear: Option<&LinearGrid>, geometric: Option<&GeometricGrid>) -> Vec<u64> {
    let mut points = Vec::new();
    if let Some(g) = linear {
        points.extend(g.points());
    }
    if let Some(g) = geometric {
        points.extend(g.points());
    }
    points.sort_unstable();
    points.dedup();
    points
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear() {
        let g: LinearGrid = "100:1000:100".parse().unwrap();
        assert_eq!(g.points(), (1..=10).map(|k| 100 * k).collect::<Vec<_>>());
        let g: LinearGrid = "10:5:1".parse().unwrap();
        assert!(g.points().is_empty());
        assert!("0:10:1".parse::<LinearGrid>().is_err());
        assert!("1:10".parse::<LinearGrid>().is_err());
        assert!("1:10:0".parse::<LinearGrid>().is_err());
    }

    #[test]
    fn geometric() {
        let g: GeometricGrid = "125:1000:2".parse().unwrap();
        assert_eq!(g.points(), vec![125, 250, 500, 1000]);
        let g: GeometricGrid = "10:100:1.5".parse().unwrap();
        assert_eq!(g.points(), vec![10, 15, 23, 34, 51, 76]);
        assert!("1:10:1".parse::<GeometricGrid>().is_err());
    }

    #[test]
    fn merged() {
        let a: LinearGrid = "100:400:100".parse().unwrap();
        let b: GeometricGrid = "100:1600:2".parse().unwrap();
        assert_eq!(merge(Some(&a), Some(&b)), vec![100, 200, 300, 400, 800, 1600]);
        assert!(merge(None, None).is_empty());
    }
}
