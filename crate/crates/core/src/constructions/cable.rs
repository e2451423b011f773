//! Cabling: threading parallel strands along a closed walk in the dual.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{Dart, EmbeddedGraph, MapBuilder, Smoothed};
use crate::validate::validate_cq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Turn {
    Right,
    Straight,
    Left,
}

impl Turn {
    pub fn letter(self) -> char {
        match self {
            Turn::Right => 'R',
            Turn::Straight => 'S',
            Turn::Left => 'L',
        }
    }

    pub fn from_letter(c: char) -> Option<Turn> {
        match c {
            'R' => Some(Turn::Right),
            'S' => Some(Turn::Straight),
            'L' => Some(Turn::Left),
            _ => None,
        }
    }
}

/// Labels the other three edges of the quadrangle entered through `entering`
/// (a dart of that face): they follow in face order as right, straight, left.
pub fn classify_turn(g: &EmbeddedGraph, entering: Dart) -> Result<[(Dart, Turn); 3]> {
    let f = g.face_walk(entering);
    if f.len() != 4 {
        return Err(Error::Precondition(format!(
            "face of dart {entering} has length {}, not 4",
            f.len()
        )));
    }
    Ok([(f[1], Turn::Right), (f[2], Turn::Straight), (f[3], Turn::Left)])
}

/// A closed walk in the dual, stored as the crossed edges.
///
/// `darts[i]` is the dart of the i-th crossed edge that lies on the face the
/// walk enters; `turns[i]` is the turn taken inside that face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CablingWalk {
    pub darts: Vec<Dart>,
    pub turns: Vec<Turn>,
}

impl CablingWalk {
    /// Checks a walk given by entering darts and derives its turns.
    pub fn new(g: &EmbeddedGraph, darts: Vec<Dart>) -> Result<CablingWalk> {
        let n = darts.len();
        if n < 2 {
            return Err(Error::Precondition("a cabling walk crosses at least two edges".into()));
        }
        let mut seen = vec![false; g.num_darts()];
        for &d in &darts {
            if d >= g.num_darts() {
                return Err(Error::Precondition(format!("dart {d} out of range")));
            }
            let e = d.min(g.alpha(d));
            if seen[e] {
                return Err(Error::Precondition(format!("edge of dart {d} is crossed twice")));
            }
            seen[e] = true;
        }
        let mut turns = Vec::with_capacity(n);
        for i in 0..n {
            let exit = g.alpha(darts[(i + 1) % n]);
            let t = classify_turn(g, darts[i])?
                .iter()
                .find(|&&(x, _)| x == exit)
                .map(|&(_, t)| t)
                .ok_or_else(|| {
                    Error::Precondition(format!("step {i}: next edge does not bound the entered face"))
                })?;
            turns.push(t);
        }
        let (face_of, _) = g.face_index();
        let mut visits: std::collections::HashMap<usize, Vec<usize>> = Default::default();
        for (i, &d) in darts.iter().enumerate() {
            visits.entry(face_of[d]).or_default().push(i);
        }
        for steps in visits.values() {
            if steps.len() > 1 && steps.iter().any(|&i| turns[i] == Turn::Straight) {
                return Err(Error::Precondition(format!(
                    "a face visited twice must be turned in both times (steps {steps:?})"
                )));
            }
        }
        let bends: Vec<Turn> = turns.iter().copied().filter(|&t| t != Turn::Straight).collect();
        if bends.len() % 2 == 1 || bends.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("turns must alternate right and left".into()));
        }
        Ok(CablingWalk { darts, turns })
    }

    /// Builds a walk from edge ids (the k-th edge in smallest-dart order),
    /// choosing the crossing direction that closes up. When `turns` is given,
    /// the derived turns must agree with it.
    pub fn from_edges(g: &EmbeddedGraph, edges: &[usize], turns: Option<&[Turn]>) -> Result<CablingWalk> {
        let ids: Vec<Dart> = (0..g.num_darts()).filter(|&d| d < g.alpha(d)).collect();
        let darts: Vec<Dart> = edges
            .iter()
            .map(|&k| ids.get(k).copied().ok_or_else(|| Error::Precondition(format!("edge id {k} out of range"))))
            .collect::<Result<_>>()?;
        let n = darts.len();
        let mut last_err = Error::Precondition("empty walk".into());
        for first in [darts.first().copied(), darts.first().map(|&d| g.alpha(d))].into_iter().flatten() {
            let mut cur = vec![first];
            let mut ok = true;
            for i in 1..n {
                let face = g.face_walk(cur[i - 1]);
                let (a, b) = (darts[i], g.alpha(darts[i]));
                match (face.contains(&a), face.contains(&b)) {
                    (true, false) => cur.push(b),
                    (false, true) => cur.push(a),
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            match CablingWalk::new(g, cur) {
                Ok(w) if turns.is_none_or(|t| t == w.turns.as_slice()) => return Ok(w),
                Ok(_) => last_err = Error::Precondition("turn annotations disagree with the map".into()),
                Err(e) => last_err = e,
            }
        }
        Err(last_err)
    }

    /// Parses whitespace-separated tokens `e<id><R|S|L>`.
    pub fn parse(g: &EmbeddedGraph, text: &str) -> Result<CablingWalk> {
        let mut edges = Vec::new();
        let mut turns = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            let mut col = 0;
            for tok in line.split_whitespace() {
                col = line[col..].find(tok).map(|p| p + col).unwrap_or(col);
                let err = |message: String| Error::Parse {
                    line: ln + 1,
                    column: col + 1,
                    message,
                };
                let body = tok
                    .strip_prefix('e')
                    .ok_or_else(|| err(format!("expected e<id><R|S|L>, found {tok:?}")))?;
                let last = body.chars().last().ok_or_else(|| err("missing edge id".into()))?;
                let turn = Turn::from_letter(last).ok_or_else(|| err(format!("bad turn letter {last:?}")))?;
                let id: usize = body[..body.len() - 1]
                    .parse()
                    .map_err(|_| err(format!("bad edge id in {tok:?}")))?;
                edges.push(id);
                turns.push(turn);
                col += tok.len();
            }
        }
        CablingWalk::from_edges(g, &edges, Some(&turns))
    }

    /// Edge ids of the crossed edges, in walk order.
    pub fn edge_ids(&self, g: &EmbeddedGraph) -> Vec<usize> {
        let ids: Vec<Dart> = (0..g.num_darts()).filter(|&d| d < g.alpha(d)).collect();
        self.darts
            .iter()
            .map(|&d| ids.binary_search(&d.min(g.alpha(d))).expect("dart of g"))
            .collect()
    }

    /// Serializes as one line of `e<id><turn>` tokens.
    pub fn to_text(&self, g: &EmbeddedGraph) -> String {
        let toks: Vec<String> = self
            .edge_ids(g)
            .iter()
            .zip(&self.turns)
            .map(|(k, t)| format!("e{k}{}", t.letter()))
            .collect();
        toks.join(" ")
    }

    /// Steps strictly between a right turn and the following left turn.
    pub fn inner_steps(&self) -> Vec<bool> {
        let n = self.turns.len();
        let mut inner = vec![false; n];
        let Some(start) = self.turns.iter().position(|&t| t == Turn::Right) else {
            return inner;
        };
        let mut inside = false;
        for k in 0..n {
            let i = (start + k) % n;
            match self.turns[i] {
                Turn::Right => inside = true,
                Turn::Left => inside = false,
                Turn::Straight => inner[i] = inside,
            }
        }
        inner
    }

    /// Number of right turns plus steps between a right and the next left
    /// turn: the period of the extraction in the strand count.
    pub fn period(&self) -> usize {
        let inner = self.inner_steps();
        (0..self.turns.len())
            .filter(|&i| inner[i] || self.turns[i] == Turn::Right)
            .count()
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Threads `c` strands along `w`. With `c = 0` the map is returned unchanged.
pub fn cable(g: &EmbeddedGraph, w: &CablingWalk, c: usize) -> Result<EmbeddedGraph> {
    let w = CablingWalk::new(g, w.darts.clone())?;
    if c == 0 {
        return Ok(g.clone());
    }
    let n = w.darts.len();
    let inner = w.inner_steps();
    // edges after which the crossed edge is removed again
    let short: Vec<bool> = (0..n).map(|i| inner[i] || w.turns[i] == Turn::Left).collect();
    let shifted: Vec<bool> = (0..n).map(|i| inner[i] || w.turns[i] == Turn::Right).collect();
    let mut b = MapBuilder::from_graph(g);
    let mut segs: Vec<Vec<Dart>> = Vec::with_capacity(n);
    for i in 0..n {
        let count = if short[i] { c - 1 } else { c };
        let mut s = vec![w.darts[i]];
        for _ in 0..count {
            let (_, next) = b.subdivide(*s.last().unwrap());
            s.push(next);
        }
        segs.push(s);
    }
    // corner markers: a strand end goes into the corner just before the dart
    let mut strands = Vec::with_capacity(n * c);
    for i in 0..n {
        let (here, next) = (&segs[i], &segs[(i + 1) % n]);
        for j in 1..=c {
            let p = j;
            let q = j - usize::from(shifted[i]);
            let at_here = if p < here.len() { here[p] } else { b.phi(*here.last().unwrap()) };
            let at_next = if q == 0 { b.phi(b.alpha(next[0])) } else { b.alpha(next[q - 1]) };
            strands.push((at_here, at_next));
        }
    }
    for (x, y) in strands {
        b.chord(x, y);
    }
    for i in (0..n).filter(|&i| short[i]) {
        for &s in &segs[i] {
            b.remove_edge(s);
        }
    }
    for v in 0..b.num_vertex_slots() {
        if b.vertex_alive(v) && b.degree(v) == 2 && b.smooth(v)? == Smoothed::DroppedLoop {
            return Err(Error::DegenerateSmoothing(v));
        }
    }
    let out = b.build()?;
    let rep = validate_cq(&out);
    if !rep.passed() {
        return Err(Error::Precondition(format!(
            "cable output is not a cubic quadrangulation: {}",
            rep.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// Dual walk around the equator of the cube: four straight steps.
    fn equator(g: &EmbeddedGraph) -> CablingWalk {
        let mut darts = vec![0];
        loop {
            let t = classify_turn(g, *darts.last().unwrap()).unwrap();
            let next = g.alpha(t[1].0);
            if next == darts[0] {
                break;
            }
            darts.push(next);
        }
        CablingWalk::new(g, darts).unwrap()
    }

    #[test]
    fn equator_is_straight() {
        let g = fixtures::cube();
        let w = equator(&g);
        assert_eq!(w.turns, vec![Turn::Straight; 4]);
        assert_eq!(w.period(), 0);
    }

    #[test]
    fn straight_cabling_adds_rings() {
        let g = fixtures::cube();
        let w = equator(&g);
        for c in 0..4 {
            let h = cable(&g, &w, c).unwrap();
            assert_eq!(h.num_vertices(), 8 + 4 * c);
        }
    }

    #[test]
    fn walk_text_round_trip() {
        let g = fixtures::cube();
        let w = equator(&g);
        let text = w.to_text(&g);
        assert_eq!(CablingWalk::parse(&g, &text).unwrap(), w);
        assert!(matches!(
            CablingWalk::parse(&g, "e0S e1X"),
            Err(Error::Parse { line: 1, column: 5, .. })
        ));
    }

    #[test]
    fn non_quadrangle_face_is_rejected() {
        let t = fixtures::triangle();
        assert!(classify_turn(&t, 0).is_err());
    }

    #[test]
    fn example_walk_has_period_four() {
        use crate::iso::canon_multigraph;
        use crate::transverse::extract;
        let (g, w) = fixtures::cable_example();
        assert_eq!(w.period(), 4);
        let codes: Vec<_> = (0..12)
            .map(|c| canon_multigraph(&extract(&cable(&g, &w, c).unwrap()).unwrap()).unwrap())
            .collect();
        assert!((0..8).all(|c| codes[c] == codes[c + 4]));
        assert!((0..10).any(|c| codes[c] != codes[c + 2]));
    }

    #[test]
    fn strand_vertices_are_smoothed() {
        let (g, w) = fixtures::cable_example();
        // two edges keep c subdivision vertices each, four lose theirs
        for c in 1..6 {
            assert_eq!(cable(&g, &w, c).unwrap().num_vertices(), 8 + 2 * c);
        }
    }
}
