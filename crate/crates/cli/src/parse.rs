//! Flag-value parsers: sweep ranges, 2-D grids, and complex-number lists.

use num_complex::Complex64;

use crate::CliError;

/// An inclusive sweep `a:b:n` — n evenly spaced points including both
/// endpoints; `n = 1` requires `a = b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Range {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = text.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(CliError::usage(format!(
                "range must be start:stop:count, got '{text}'"
            )));
        };
        let start: f64 = a
            .parse()
            .map_err(|_| CliError::usage(format!("bad range start '{a}'")))?;
        let stop: f64 = b
            .parse()
            .map_err(|_| CliError::usage(format!("bad range stop '{b}'")))?;
        let points: usize = n
            .parse()
            .map_err(|_| CliError::usage(format!("bad range count '{n}'")))?;
        if !start.is_finite() || !stop.is_finite() {
            return Err(CliError::usage(format!(
                "range endpoints must be finite in '{text}'"
            )));
        }
        if points == 0 {
            return Err(CliError::usage(format!(
                "range count must be >= 1 in '{text}'"
            )));
        }
        if points == 1 && start != stop {
            return Err(CliError::usage(format!(
                "single-point range requires equal endpoints, got '{text}'"
            )));
        }
        if points > 1 && start >= stop {
            return Err(CliError::usage(format!(
                "range start must be below stop for multi-point sweeps, got '{text}'"
            )));
        }
        Ok(Range {
            start,
            stop,
            points,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

/// `tmin:tmax:n,omin:omax:n` — a row-major 2-D evaluation grid.
pub fn parse_grid(text: &str) -> Result<(Range, Range), CliError> {
    let (tau, omega) = text.split_once(',').ok_or_else(|| {
        CliError::usage(format!(
            "grid must be tmin:tmax:n,omin:omax:n, got '{text}'"
        ))
    })?;
    Ok((Range::parse(tau)?, Range::parse(omega)?))
}

/// A single complex literal: `3`, `-0.5`, `i`, `-2i`, `3+4i`, `1.5-0.25i`.
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(CliError::usage("empty complex entry".to_string()));
    }
    let bad = || CliError::usage(format!("bad complex entry '{text}'"));
    let Some(body) = t.strip_suffix(['i', 'I']) else {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    };
    // split at the last +/- that is not a leading sign or exponent sign
    let split = body
        .char_indices()
        .rev()
        .find(|&(idx, c)| {
            (c == '+' || c == '-') && idx != 0 && !matches!(body.as_bytes()[idx - 1], b'e' | b'E')
        })
        .map(|(idx, _)| idx);
    let (re_part, im_part) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part.parse::<f64>().map_err(|_| bad())?
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

/// Comma-separated list of complex literals.
pub fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, CliError> {
    text.split(',').map(parse_complex).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_forms() {
        let r = Range::parse("0:1:5").unwrap();
        assert_eq!(r.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(Range::parse("2:2:1").unwrap().values(), vec![2.0]);
        assert!(Range::parse("0:0:1").is_ok());
        assert!(Range::parse("1:0:5").is_err());
        assert!(Range::parse("0:1:0").is_err());
        assert!(Range::parse("0:1:1").is_err());
        assert!(Range::parse("0:1").is_err());
        assert!(Range::parse("x:1:2").is_err());
        // endpoints exact
        let r = Range::parse("0.1:0.7:7").unwrap();
        assert_eq!(*r.values().last().unwrap(), 0.7);
    }

    #[test]
    fn grid_form() {
        let (t, w) = parse_grid("-1:1:3,0:2:5").unwrap();
        assert_eq!(t.values().len(), 3);
        assert_eq!(w.values().len(), 5);
        assert!(parse_grid("-1:1:3").is_err());
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
        assert_eq!(parse_complex("-0.5").unwrap(), Complex64::new(-0.5, 0.0));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(parse_complex("3+4i").unwrap(), Complex64::new(3.0, 4.0));
        assert_eq!(
            parse_complex("1.5-0.25i").unwrap(),
            Complex64::new(1.5, -0.25)
        );
        assert_eq!(parse_complex("1e-3i").unwrap(), Complex64::new(0.0, 1e-3));
        assert_eq!(
            parse_complex("2e-2+1e-3i").unwrap(),
            Complex64::new(2e-2, 1e-3)
        );
        assert!(parse_complex("").is_err());
        assert!(parse_complex("3+4j").is_err());

        let list = parse_complex_list("3,4").unwrap();
        assert_eq!(
            list,
            vec![Complex64::new(3.0, 0.0), Complex64::new(4.0, 0.0)]
        );
        assert_eq!(
            parse_complex_list("1,i").unwrap()[1],
            Complex64::new(0.0, 1.0)
        );
    }
}
