use std::fmt;

use thiserror::Error;

use super::{AutRef, Recipe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: expected ", self.line, self.col)?;
        match self.expected.as_slice() {
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

const BASES: &[&str] = &[
    "cyclic(", "dihedral(", "ea(", "dic(", "sdp(", "builtin(", "perm(", "su3(", "u(", "famA(", "famB(", "famC(",
    "famD(", "(",
];

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error_at(&self, pos: usize, expected: &[&str]) -> ParseError {
        let (mut line, mut col) = (1, 1);
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        let found = match self.chars.get(pos) {
            None => "end of input".to_string(),
            Some(_) => {
                let tail: String = self.chars[pos..].iter().take_while(|c| !c.is_whitespace()).take(12).collect();
                format!("{tail:?}")
            }
        };
        ParseError { line, col, expected: expected.iter().map(|s| s.to_string()).collect(), found }
    }

    fn error(&mut self, expected: &[&str]) -> ParseError {
        self.skip_ws();
        self.error_at(self.pos, expected)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let s = c.to_string();
            Err(self.error(&[&s]))
        }
    }

    fn expect_str(&mut self, s: &str) -> PResult<()> {
        self.skip_ws();
        let start = self.pos;
        for c in s.chars() {
            if self.chars.get(self.pos) != Some(&c) {
                return Err(self.error_at(start, &[s]));
            }
            self.pos += 1;
        }
        Ok(())
    }

    fn int(&mut self) -> PResult<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error_at(start, &["INT"]));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| self.error_at(start, &["INT that fits in 64 bits"]))
    }

    fn word(&mut self, extra: &[char]) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| c.is_ascii_alphanumeric() || c == '_' || extra.contains(&c)) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn name(&mut self) -> PResult<String> {
        self.skip_ws();
        let start = self.pos;
        let id = self.word(&['*']);
        if id.is_empty() {
            return Err(self.error_at(start, &["NAME"]));
        }
        if self.eat('(') {
            let n = self.int()?;
            self.expect(')')?;
            return Ok(format!("{id}({n})"));
        }
        Ok(id)
    }

    fn recipe(&mut self) -> PResult<Recipe> {
        let mut lhs = self.atom()?;
        while self.peek() == Some('x') {
            self.pos += 1;
            let rhs = self.atom()?;
            lhs = Recipe::Product(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> PResult<Recipe> {
        let base = self.base()?;
        if self.eat('^') {
            let k = self.int()?;
            return Ok(Recipe::Power(Box::new(base), k));
        }
        Ok(base)
    }

    fn base(&mut self) -> PResult<Recipe> {
        if self.eat('(') {
            let r = self.recipe()?;
            self.expect(')')?;
            return Ok(r);
        }
        self.skip_ws();
        let start = self.pos;
        let kw = self.word(&[]);
        let known = ["cyclic", "dihedral", "ea", "dic", "sdp", "builtin", "perm", "su3", "u", "famA", "famB", "famC", "famD"];
        if !known.contains(&kw.as_str()) || self.peek() != Some('(') {
            return Err(self.error_at(start, BASES));
        }
        self.pos += 1;
        let r = match kw.as_str() {
            "cyclic" => Recipe::Cyclic(self.int()?),
            "dihedral" => Recipe::Dihedral(self.int()?),
            "ea" => {
                let p = self.int()?;
                self.expect(',')?;
                Recipe::ElemAbelian(p, self.int()?)
            }
            "dic" => Recipe::Dicyclic(Box::new(self.recipe()?)),
            "sdp" => {
                let k = self.recipe()?;
                self.expect(',')?;
                let a = self.autref()?;
                self.expect(',')?;
                Recipe::Semidirect(Box::new(k), a, self.int()?)
            }
            "builtin" => Recipe::Builtin(self.name()?),
            "perm" => Recipe::Perm(self.cycles()?),
            "su3" => Recipe::Su3(self.int()?),
            "u" => Recipe::U(self.int()?),
            "famA" => {
                let m = self.int()?;
                self.expect(',')?;
                Recipe::FamA(m, self.int()?)
            }
            "famB" => {
                let u = self.recipe()?;
                self.expect(',')?;
                Recipe::FamB(Box::new(u), self.int()?)
            }
            "famC" => Recipe::FamC(self.name()?),
            "famD" => {
                let name = self.name()?;
                self.expect(',')?;
                Recipe::FamD(name, self.int()?)
            }
            _ => unreachable!("keyword list checked above"),
        };
        self.expect(')')?;
        Ok(r)
    }

    fn autref(&mut self) -> PResult<AutRef> {
        if self.eat('{') {
            let mut gens = Vec::new();
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                gens.push(self.int()?);
            }
            self.expect_str("->")?;
            let mut images = Vec::new();
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                images.push(self.int()?);
            }
            self.expect('}')?;
            return Ok(AutRef::Images { gens, images });
        }
        self.skip_ws();
        let start = self.pos;
        match self.word(&[]).as_str() {
            "id" => Ok(AutRef::Identity),
            "inv" => Ok(AutRef::Inversion),
            "fpf3" => Ok(AutRef::Fpf3),
            _ => Err(self.error_at(start, &["id", "inv", "fpf3", "{"])),
        }
    }

    fn cycles(&mut self) -> PResult<Vec<Vec<Vec<usize>>>> {
        let mut gens = vec![self.perm_gen()?];
        while self.eat(';') {
            gens.push(self.perm_gen()?);
        }
        Ok(gens)
    }

    fn perm_gen(&mut self) -> PResult<Vec<Vec<usize>>> {
        let mut cycles = Vec::new();
        if self.peek() != Some('(') {
            return Err(self.error(&["("]));
        }
        while self.eat('(') {
            let mut pts = Vec::new();
            if !self.eat(')') {
                pts.push(self.int()?);
                while self.eat(',') {
                    pts.push(self.int()?);
                }
                self.expect(')')?;
            }
            cycles.push(pts);
        }
        Ok(cycles)
    }
}

/// Parses a recipe. Errors carry the 1-based line and column of the offending
/// token and the set of tokens that would have been accepted there.
pub fn parse_recipe(text: &str) -> Result<Recipe, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let r = p.recipe()?;
    if p.peek().is_some() {
        return Err(p.error(&["x", "^", "end of input"]));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_forms() {
        assert_eq!(parse_recipe("famA(1,0)").unwrap(), Recipe::FamA(1, 0));
        assert_eq!(parse_recipe(" builtin( U(2) ) ").unwrap(), Recipe::Builtin("U(2)".into()));
        assert_eq!(parse_recipe("famD(SU3(1),1)").unwrap(), Recipe::FamD("SU3(1)".into(), 1));
        assert_eq!(
            parse_recipe("sdp(cyclic(7), {1 -> 2}, 3)").unwrap(),
            Recipe::Semidirect(Box::new(Recipe::Cyclic(7)), AutRef::Images { gens: vec![1], images: vec![2] }, 3)
        );
    }

    #[test]
    fn dicyclic_shape() {
        let r = parse_recipe("dic(cyclic(3)^2 x cyclic(2)) x cyclic(2)^3").unwrap();
        let inner = Recipe::Product(
            Box::new(Recipe::Power(Box::new(Recipe::Cyclic(3)), 2)),
            Box::new(Recipe::Cyclic(2)),
        );
        let expected =
            Recipe::Product(Box::new(Recipe::Dicyclic(Box::new(inner))), Box::new(Recipe::Power(Box::new(Recipe::Cyclic(2)), 3)));
        assert_eq!(r, expected);
        assert_eq!(r.canonical(), "dic(cyclic(3)^2 x cyclic(2)) x cyclic(2)^3");
    }

    #[test]
    fn product_is_left_associative() {
        let r = parse_recipe("cyclic(2)xcyclic(3) x cyclic(4)").unwrap();
        match r {
            Recipe::Product(l, r) => {
                assert_eq!(*r, Recipe::Cyclic(4));
                assert!(matches!(*l, Recipe::Product(..)));
            }
            _ => panic!("not a product"),
        }
        let right = parse_recipe("cyclic(2) x (cyclic(3) x cyclic(4))").unwrap();
        assert_eq!(right.canonical(), "cyclic(2) x (cyclic(3) x cyclic(4))");
    }

    #[test]
    fn truncated_input_reports_column() {
        let e = parse_recipe("cyclic(").unwrap_err();
        assert_eq!((e.line, e.col), (1, 8));
        assert_eq!(e.expected, vec!["INT"]);
        assert_eq!(e.found, "end of input");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_recipe("cyclic(3) x\n  foo(2)").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert!(e.expected.contains(&"famA(".to_string()));
        let e = parse_recipe("cyclic(3) y").unwrap_err();
        assert_eq!(e.col, 11);
        let e = parse_recipe("sdp(cyclic(3), fpf, 3)").unwrap_err();
        assert_eq!(e.col, 16);
        assert!(e.to_string().starts_with("line 1, col 16: expected one of id, inv, fpf3, {"));
    }

    #[test]
    fn permutations() {
        let r = parse_recipe("perm((1,2)(3,4); (1,2,3))").unwrap();
        assert_eq!(r, Recipe::Perm(vec![vec![vec![1, 2], vec![3, 4]], vec![vec![1, 2, 3]]]));
        assert_eq!(r.canonical(), "perm((1,2)(3,4);(1,2,3))");
        assert!(parse_recipe("perm()").is_err());
    }
}
