use std::fmt;
use std::str::FromStr;

/// `start:stop:count`, equally spaced and inclusive; a bare number is a
/// one-point grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub const fn new(start: f64, stop: f64, count: usize) -> Self {
        GridSpec { start, stop, count }
    }

    pub fn points(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.start],
            n => (0..n)
                .map(|i| {
                    if i == n - 1 {
                        self.stop
                    } else {
                        self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64
                    }
                })
                .collect(),
        }
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let number = |part: &str| {
            part.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("`{part}` is not a finite number"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts[..] {
            [x] => Ok(GridSpec::new(number(x)?, number(x)?, 1)),
            [a, b, n] => {
                let count: usize = n.trim().parse().map_err(|_| format!("`{n}` is not a count"))?;
                if count == 0 {
                    return Err("grid count must be positive".into());
                }
                Ok(GridSpec::new(number(a)?, number(b)?, count))
            }
            _ => Err(format!("expected start:stop:count, got `{s}`")),
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.count)
    }
}
