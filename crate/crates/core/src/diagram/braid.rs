use serde::{Deserialize, Serialize};

use super::{DiagramError, Event, Orient, Sign, SliceWord};

/// Braid word on `n` strands; generator `i` (1-based) is the positive
/// crossing of strands `i`, `i + 1`, and `-i` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub n: usize,
    pub gens: Vec<i32>,
}

impl BraidWord {
    pub fn new(n: usize, gens: Vec<i32>) -> Result<Self, DiagramError> {
        if n == 0 {
            return Err(DiagramError::Invalid("braid needs at least one strand".into()));
        }
        for &g in &gens {
            if g == 0 || g.unsigned_abs() as usize >= n {
                return Err(DiagramError::IndexOutOfRange(format!("generator {g} on {n} strands")));
            }
        }
        Ok(BraidWord { n, gens })
    }

    /// Parses `"s1 s1 -s2"`; the strand count is one more than the largest
    /// generator index.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        Self::parse_with_strands(text, None)
    }

    pub fn parse_with_strands(text: &str, n: Option<usize>) -> Result<Self, DiagramError> {
        let mut gens = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let (neg, body) = match tok.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, tok),
            };
            let idx: i32 = body
                .strip_prefix('s')
                .and_then(|d| d.parse().ok())
                .filter(|&i: &i32| i > 0)
                .ok_or_else(|| DiagramError::Parse(format!("bad braid generator {tok:?}")))?;
            gens.push(if neg { -idx } else { idx });
        }
        let needed = gens.iter().map(|g| g.unsigned_abs() as usize + 1).max().unwrap_or(1);
        Self::new(n.unwrap_or(needed), gens)
    }

    pub fn to_text(&self) -> String {
        self.gens.iter().map(|&g| if g > 0 { format!("s{g}") } else { format!("-s{}", -g) }).collect::<Vec<_>>().join(" ")
    }

    /// The braid as an open tangle of `n` downward strands.
    pub fn to_tangle(&self) -> SliceWord {
        let events = self.crossing_events(0);
        SliceWord::new(vec![Orient::Down; self.n], events, None).unwrap()
    }

    fn crossing_events(&self, offset: usize) -> Vec<Event> {
        self.gens
            .iter()
            .map(|&g| Event::Cross { pos: offset + g.unsigned_abs() as usize - 1, sign: if g > 0 { Sign::Pos } else { Sign::Neg } })
            .collect()
    }

    /// Permutation: strand starting at top position `i` ends at `perm[i]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.n).collect(); // at[pos] = strand
        for &g in &self.gens {
            let p = g.unsigned_abs() as usize - 1;
            at.swap(p, p + 1);
        }
        let mut perm = vec![0; self.n];
        for (pos, &s) in at.iter().enumerate() {
            perm[s] = pos;
        }
        perm
    }
}

/// Trace closure: braid strands run down on the left, return strands run up
/// on the right, nested.
pub fn braid_closure(b: &BraidWord) -> SliceWord {
    let n = b.n;
    let mut events = Vec::with_capacity(2 * n + b.gens.len());
    for i in 0..n {
        events.push(Event::Cup { pos: i, left: Orient::Down });
    }
    events.extend(b.crossing_events(0));
    for i in (0..n).rev() {
        events.push(Event::Cap { pos: i });
    }
    SliceWord::closed(events).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_close() {
        let b = BraidWord::parse("s1 s1 s1").unwrap();
        assert_eq!(b.n, 2);
        let t = braid_closure(&b);
        assert_eq!(t.n_components(), 1);
        assert_eq!(t.writhe(), 3);
        assert_eq!(braid_closure(&BraidWord::parse("s1").unwrap()).n_components(), 1);
        assert_eq!(braid_closure(&BraidWord::parse("s1 -s1").unwrap()).n_components(), 2);
        let u = braid_closure(&BraidWord::new(1, vec![]).unwrap());
        assert_eq!(u.events().len(), 2);
        assert_eq!(BraidWord::parse("-s2 s1").unwrap().to_text(), "-s2 s1");
        assert!(BraidWord::parse("x1").is_err());
        assert!(BraidWord::parse("s0").is_err());
        assert!(BraidWord::parse_with_strands("s3", Some(3)).is_err());
    }

    #[test]
    fn components_match_permutation_cycles() {
        let b = BraidWord::parse_with_strands("s1 s2 s1 s3", Some(5)).unwrap();
        let perm = b.permutation();
        let mut seen = [false; 5];
        let mut cycles = 0;
        for i in 0..5 {
            if !seen[i] {
                cycles += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = perm[j];
                }
            }
        }
        assert_eq!(braid_closure(&b).n_components(), cycles);
    }
}
