use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar::VertexId;

/// One of the four colors, `1..=4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Color(u8);

impl Color {
    pub const ALL: [Color; 4] = [Color(1), Color(2), Color(3), Color(4)];

    pub fn new(value: u8) -> Option<Color> {
        (1..=4).contains(&value).then_some(Color(value))
    }

    #[inline]
    pub fn value(self) -> u8 {
        self.0
    }

    #[inline]
    pub(crate) fn bit(self) -> u8 {
        1 << (self.0 - 1)
    }

    /// Display name used in renderings.
    pub fn name(self) -> &'static str {
        match self.0 {
            1 => "yellow",
            2 => "blue",
            3 => "red",
            _ => "green",
        }
    }
}

impl TryFrom<u8> for Color {
    type Error = String;
    fn try_from(v: u8) -> Result<Self, Self::Error> {
        Color::new(v).ok_or_else(|| format!("color {v} outside 1..=4"))
    }
}

impl From<Color> for u8 {
    fn from(c: Color) -> u8 {
        c.0
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Bit set over the four colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ColorSet(pub(crate) u8);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);
    pub const FULL: ColorSet = ColorSet(0b1111);

    pub fn from_colors(colors: impl IntoIterator<Item = Color>) -> Self {
        ColorSet(colors.into_iter().fold(0, |m, c| m | c.bit()))
    }

    pub fn contains(self, c: Color) -> bool {
        self.0 & c.bit() != 0
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= c.bit();
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self) -> ColorSet {
        ColorSet(!self.0 & 0b1111)
    }

    pub fn intersect(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member.
    pub fn lowest(self) -> Option<Color> {
        (self.0 != 0).then(|| Color(self.0.trailing_zeros() as u8 + 1))
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        Color::ALL.into_iter().filter(move |c| self.contains(*c))
    }

    pub fn to_vec(self) -> Vec<Color> {
        self.iter().collect()
    }
}

/// Three of the four colors, the color class of one segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Palette(ColorSet);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PaletteError {
    #[error("a palette has exactly three colors, got {0}")]
    WrongSize(usize),
    #[error("constraints {constraints:?} cannot fit a palette different from {previous:?}")]
    Infeasible { previous: Option<Vec<u8>>, constraints: Vec<u8> },
}

impl Palette {
    pub fn new(colors: ColorSet) -> Result<Palette, PaletteError> {
        if colors.len() == 3 {
            Ok(Palette(colors))
        } else {
            Err(PaletteError::WrongSize(colors.len()))
        }
    }

    pub fn without(missing: Color) -> Palette {
        Palette(ColorSet::FULL.intersect(ColorSet::from_colors([missing]).complement()))
    }

    pub fn colors(self) -> ColorSet {
        self.0
    }

    /// The one color not in the palette.
    pub fn missing(self) -> Color {
        self.0.complement().lowest().unwrap()
    }

    pub fn contains(self, c: Color) -> bool {
        self.0.contains(c)
    }

    /// All four palettes in ascending lexicographic order.
    pub fn all() -> [Palette; 4] {
        [Palette::without(Color(4)), Palette::without(Color(3)), Palette::without(Color(2)), Palette::without(Color(1))]
    }
}

impl TryFrom<Vec<u8>> for Palette {
    type Error = String;
    fn try_from(v: Vec<u8>) -> Result<Self, Self::Error> {
        let colors = v.into_iter().map(Color::try_from).collect::<Result<Vec<_>, _>>()?;
        Palette::new(ColorSet::from_colors(colors)).map_err(|e| e.to_string())
    }
}

impl From<Palette> for Vec<u8> {
    fn from(p: Palette) -> Vec<u8> {
        p.0.iter().map(|c| c.0).collect()
    }
}

impl fmt::Display for Palette {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

/// Picks the palette for the next segment.
///
/// Without a predecessor the answer is `{1,2,3}`. Otherwise the result must
/// differ from `previous`, which means it keeps two of its colors and adds
/// the one it lacked; the dropped color is the lowest one not demanded by
/// `constraints`. So `{1,2,3}` is followed by `{2,3,4}`.
pub fn choose_palette(previous: Option<Palette>, constraints: ColorSet) -> Result<Palette, PaletteError> {
    let err = || PaletteError::Infeasible {
        previous: previous.map(Vec::from),
        constraints: constraints.iter().map(|c| c.0).collect(),
    };
    if constraints.len() > 3 {
        return Err(err());
    }
    match previous {
        None => Palette::all().into_iter().find(|p| constraints.is_subset(p.colors())).ok_or_else(err),
        Some(prev) => {
            let added = prev.missing();
            prev.colors()
                .iter()
                .filter(|c| !constraints.contains(*c))
                .map(|drop| {
                    let mut s = prev.colors().intersect(ColorSet::from_colors([drop]).complement());
                    s.insert(added);
                    Palette(s)
                })
                .find(|p| constraints.is_subset(p.colors()))
                .ok_or_else(err)
        }
    }
}

/// A possibly partial vertex coloring. Entry `0` means uncolored; any other
/// value is kept as given so the verifier can reject out-of-range colors
/// read from documents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring {
    values: Vec<u8>,
}

impl Coloring {
    pub fn empty(n: usize) -> Self {
        Coloring { values: vec![0; n] }
    }

    pub fn from_raw(values: Vec<u8>) -> Self {
        Coloring { values }
    }

    pub fn from_colors(colors: &[Color]) -> Self {
        Coloring { values: colors.iter().map(|c| c.0).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> Option<Color> {
        Color::new(self.values[v.index()])
    }

    #[inline]
    pub(crate) fn raw(&self, v: VertexId) -> u8 {
        self.values[v.index()]
    }

    pub fn raw_values(&self) -> &[u8] {
        &self.values
    }

    #[inline]
    pub fn set(&mut self, v: VertexId, c: Color) {
        self.values[v.index()] = c.0;
    }

    pub fn clear(&mut self, v: VertexId) {
        self.values[v.index()] = 0;
    }

    pub fn is_colored(&self, v: VertexId) -> bool {
        self.values[v.index()] != 0
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(|&c| c != 0)
    }

    pub fn colors_used(&self) -> ColorSet {
        ColorSet::from_colors(self.values.iter().filter_map(|&c| Color::new(c)))
    }

    pub fn colored_count(&self) -> usize {
        self.values.iter().filter(|&&c| c != 0).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u8]) -> ColorSet {
        ColorSet::from_colors(v.iter().map(|&c| Color::new(c).unwrap()))
    }

    fn pal(v: &[u8]) -> Palette {
        Palette::new(set(v)).unwrap()
    }

    #[test]
    fn first_palette() {
        assert_eq!(choose_palette(None, ColorSet::EMPTY).unwrap(), pal(&[1, 2, 3]));
    }

    #[test]
    fn one_two_three_is_followed_by_two_three_four() {
        assert_eq!(choose_palette(Some(pal(&[1, 2, 3])), ColorSet::EMPTY).unwrap(), pal(&[2, 3, 4]));
    }

    #[test]
    fn constrained_choice_against_enumeration() {
        // brute force: every 3-subset containing 1 and different from {2,3,4}
        let prev = pal(&[2, 3, 4]);
        let admissible: Vec<Palette> =
            Palette::all().into_iter().filter(|p| *p != prev && p.contains(Color::new(1).unwrap())).collect();
        assert_eq!(admissible.len(), 3);
        let got = choose_palette(Some(prev), set(&[1])).unwrap();
        assert!(admissible.contains(&got));
        // the lowest color of {2,3,4} is dropped
        assert_eq!(got, pal(&[1, 3, 4]));
    }

    #[test]
    fn consecutive_palettes_share_two_colors() {
        for prev in Palette::all() {
            for mask in 0u8..16 {
                let cons = ColorSet(mask);
                if cons.len() > 2 {
                    continue;
                }
                if let Ok(next) = choose_palette(Some(prev), cons) {
                    assert_ne!(next, prev);
                    assert_eq!(next.colors().intersect(prev.colors()).len(), 2);
                    assert!(cons.is_subset(next.colors()));
                }
            }
        }
    }

    #[test]
    fn infeasible_constraints() {
        assert!(choose_palette(None, ColorSet::FULL).is_err());
        // must keep all of {1,2,3} yet differ from it
        assert!(choose_palette(Some(pal(&[1, 2, 3])), set(&[1, 2, 3])).is_err());
    }

    #[test]
    fn palette_serde() {
        let p = pal(&[1, 3, 4]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[1,3,4]");
        assert_eq!(serde_json::from_str::<Palette>(&s).unwrap(), p);
        assert!(serde_json::from_str::<Palette>("[1,2]").is_err());
    }
}
