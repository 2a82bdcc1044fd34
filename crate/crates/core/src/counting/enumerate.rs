use super::eval::region_size;
use super::{Budget, Hypercube};
use crate::error::Result;
use crate::poly::Polynomial;

/// Lazily yields solutions in lexicographic order (`x1` most significant).
#[derive(Debug, Clone)]
pub struct Solutions {
    poly: Polynomial,
    region: Vec<(i64, i64)>,
    current: Option<Vec<i64>>,
    remaining: usize,
}

impl Solutions {
    fn advance(&mut self) {
        let Some(point) = self.current.as_mut() else { return };
        for i in (0..point.len()).rev() {
            if point[i] < self.region[i].1 {
                point[i] += 1;
                return;
            }
            point[i] = self.region[i].0;
        }
        self.current = None;
    }
}

impl Iterator for Solutions {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        while self.remaining > 0 {
            let point = self.current.clone()?;
            self.advance();
            // The bound check in `enumerate_solutions` rules out overflow here.
            if self.poly.evaluate(&point).ok()? == 0 {
                self.remaining -= 1;
                return Some(point);
            }
        }
        None
    }
}

/// At most `limit` solutions of `p = 0` in the box, in lexicographic order.
pub fn enumerate_solutions(p: &Polynomial, cube: Hypercube, limit: usize, budget: &Budget) -> Result<Solutions> {
    let region = cube.region(p.var_count())?;
    budget.check_work(region_size(&region))?;
    super::eval::Compiled::new(p, &region)?;
    let empty = region.iter().any(|r| r.0 > r.1);
    let current = if empty || limit == 0 { None } else { Some(region.iter().map(|r| r.0).collect()) };
    Ok(Solutions { poly: p.clone(), region, current, remaining: limit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_equation;

    #[test]
    fn circle_lexicographic() {
        let p = parse_equation("x1^2+x2^2-25").unwrap();
        let got: Vec<_> = enumerate_solutions(&p, Hypercube::integer(5), 3, &Budget::default()).unwrap().collect();
        assert_eq!(got, vec![vec![-5, 0], vec![-4, -3], vec![-4, 3]]);
    }

    #[test]
    fn empty_streams() {
        let p = parse_equation("x1^2+x2^2+1").unwrap();
        assert_eq!(enumerate_solutions(&p, Hypercube::integer(5), 10, &Budget::default()).unwrap().count(), 0);
        let q = parse_equation("x1 - x2").unwrap();
        assert_eq!(enumerate_solutions(&q, Hypercube::integer(5), 0, &Budget::default()).unwrap().count(), 0);
    }

    #[test]
    fn all_solutions_when_limit_is_large() {
        let p = parse_equation("x1^2+x2^2-25").unwrap();
        let all: Vec<_> = enumerate_solutions(&p, Hypercube::integer(10), usize::MAX, &Budget::default())
            .unwrap()
            .collect();
        assert_eq!(all.len(), 12);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
