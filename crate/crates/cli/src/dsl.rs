//! Graph expression language.
//!
//! ```text
//! expr := complete(INT) | empty(INT) | path(INT) | star(INT) | digon
//!       | cube(INT) | cocktail(INT) | halvedcube(INT) | wk2(REAL)
//!       | selfloop(expr) | complement(expr)
//!       | corona(expr, expr) | cartesian(expr, expr)
//!       | join(expr, expr) | union(expr, expr)
//! REAL := decimal | sqrt(INT) | decimal/sqrt(INT)
//! ```

use std::fmt;

use corona_walk::Graph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Real {
    Decimal(f64),
    Sqrt(u64),
    /// `a / sqrt(b)`.
    OverSqrt(f64, u64),
}

impl Real {
    pub fn value(self) -> f64 {
        match self {
            Real::Decimal(x) => x,
            Real::Sqrt(n) => (n as f64).sqrt(),
            Real::OverSqrt(a, n) => a / (n as f64).sqrt(),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Decimal(x) => write!(f, "{x}"),
            Real::Sqrt(n) => write!(f, "sqrt({n})"),
            Real::OverSqrt(a, n) => write!(f, "{a}/sqrt({n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Leaf {
    Complete,
    Empty,
    Path,
    Star,
    Cube,
    Cocktail,
    HalvedCube,
}

impl Leaf {
    fn name(self) -> &'static str {
        match self {
            Leaf::Complete => "complete",
            Leaf::Empty => "empty",
            Leaf::Path => "path",
            Leaf::Star => "star",
            Leaf::Cube => "cube",
            Leaf::Cocktail => "cocktail",
            Leaf::HalvedCube => "halvedcube",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binary {
    Corona,
    Cartesian,
    Join,
    Union,
}

impl Binary {
    fn name(self) -> &'static str {
        match self {
            Binary::Corona => "corona",
            Binary::Cartesian => "cartesian",
            Binary::Join => "join",
            Binary::Union => "union",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Leaf(Leaf, u64),
    Digon,
    Wk2(Real),
    Selfloop(Box<Node>),
    Complement(Box<Node>),
    Binary(Binary, Box<Node>, Box<Node>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphExpr {
    pub node: Node,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source.
    pub position: usize,
    pub message: String,
    pub source: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let col = self.source[..self.position.min(self.source.len())].chars().count();
        write!(f, "{} at column {}\n  {}\n  {}^", self.message, col + 1, self.source, " ".repeat(col))
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, position: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position, message: message.into(), source: self.src.to_string() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(self.pos, format!("expected `{c}`, found `{x}`")),
            None => self.err(self.pos, format!("expected `{c}`, found end of input")),
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        (start, &self.src[start..self.pos])
    }

    fn ident(&mut self) -> Result<(usize, &'a str), ParseError> {
        let (start, word) = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        if word.is_empty() || !word.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return match self.src[start..].chars().next() {
                Some(c) => self.err(start, format!("expected a graph name, found `{c}`")),
                None => self.err(start, "expected a graph name, found end of input"),
            };
        }
        Ok((start, word))
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        let (start, digits) = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return self.err(start, "expected an integer");
        }
        digits.parse().or_else(|_| self.err(start, "integer too large"))
    }

    fn decimal(&mut self) -> Result<f64, ParseError> {
        let (start, text) = self.take_while(|c| c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E');
        let text = if (text.ends_with('e') || text.ends_with('E')) && matches!(self.src[self.pos..].chars().next(), Some('+' | '-')) {
            self.pos += 1;
            while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
                self.pos += 1;
            }
            &self.src[start..self.pos]
        } else {
            text
        };
        if !text.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
            return self.err(start, "expected a number");
        }
        match text.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => self.err(start, format!("`{text}` is not a number")),
        }
    }

    fn sqrt_arg(&mut self) -> Result<u64, ParseError> {
        let (at, word) = self.ident()?;
        if word != "sqrt" {
            return self.err(at, format!("expected `sqrt`, found `{word}`"));
        }
        self.expect('(')?;
        let n = self.int()?;
        self.expect(')')?;
        Ok(n)
    }

    fn real(&mut self) -> Result<Real, ParseError> {
        if self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return Ok(Real::Sqrt(self.sqrt_arg()?));
        }
        let a = self.decimal()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            return Ok(Real::OverSqrt(a, self.sqrt_arg()?));
        }
        Ok(Real::Decimal(a))
    }

    /// Arguments of a call whose name has been consumed.
    fn args(&mut self, name: &str, at: usize, want: usize) -> Result<Vec<Node>, ParseError> {
        self.expect('(')?;
        let mut out = vec![self.expr()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            out.push(self.expr()?);
        }
        if out.len() != want {
            return self.err(at, format!("`{name}` takes {want} argument(s), got {}", out.len()));
        }
        self.expect(')')?;
        Ok(out)
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let (at, name) = self.ident()?;
        let leaf = match name {
            "complete" => Some(Leaf::Complete),
            "empty" => Some(Leaf::Empty),
            "path" => Some(Leaf::Path),
            "star" => Some(Leaf::Star),
            "cube" => Some(Leaf::Cube),
            "cocktail" => Some(Leaf::Cocktail),
            "halvedcube" => Some(Leaf::HalvedCube),
            _ => None,
        };
        if let Some(leaf) = leaf {
            self.expect('(')?;
            let n = self.int()?;
            if self.peek() == Some(',') {
                return self.err(self.pos, format!("`{name}` takes 1 argument"));
            }
            self.expect(')')?;
            return Ok(Node::Leaf(leaf, n));
        }
        let binary = match name {
            "corona" => Some(Binary::Corona),
            "cartesian" => Some(Binary::Cartesian),
            "join" => Some(Binary::Join),
            "union" => Some(Binary::Union),
            _ => None,
        };
        if let Some(op) = binary {
            let mut a = self.args(name, at, 2)?;
            let h = a.pop().unwrap();
            let g = a.pop().unwrap();
            return Ok(Node::Binary(op, Box::new(g), Box::new(h)));
        }
        match name {
            "digon" => {
                if self.peek() == Some('(') {
                    return self.err(self.pos, "`digon` takes no arguments");
                }
                Ok(Node::Digon)
            }
            "wk2" => {
                self.expect('(')?;
                let r = self.real()?;
                self.expect(')')?;
                Ok(Node::Wk2(r))
            }
            "selfloop" => Ok(Node::Selfloop(Box::new(self.args(name, at, 1)?.remove(0)))),
            "complement" => Ok(Node::Complement(Box::new(self.args(name, at, 1)?.remove(0)))),
            other => self.err(at, format!("unknown graph `{other}`")),
        }
    }
}

pub fn parse_graph_expr(text: &str) -> Result<GraphExpr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let node = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected `{c}` after expression"));
    }
    Ok(GraphExpr { node, source: text.to_string() })
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Leaf(l, n) => write!(f, "{}({n})", l.name()),
            Node::Digon => write!(f, "digon"),
            Node::Wk2(r) => write!(f, "wk2({r})"),
            Node::Selfloop(g) => write!(f, "selfloop({g})"),
            Node::Complement(g) => write!(f, "complement({g})"),
            Node::Binary(op, g, h) => write!(f, "{}({g},{h})", op.name()),
        }
    }
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.node.fmt(f)
    }
}

impl Node {
    pub fn build(&self) -> corona_walk::Result<Graph> {
        let size = |n: u64| n as f64;
        match self {
            Node::Leaf(l, n) => Graph::make_named(l.name(), &[size(*n)]),
            Node::Digon => Ok(Graph::digon()),
            Node::Wk2(r) => Graph::wk2(r.value()),
            Node::Selfloop(g) => Ok(g.build()?.selfloop()),
            Node::Complement(g) => g.build()?.complement(),
            Node::Binary(op, g, h) => {
                let (g, h) = (g.build()?, h.build()?);
                match op {
                    Binary::Corona => g.corona(&h),
                    Binary::Cartesian => g.cartesian(&h),
                    Binary::Join => g.join(&h),
                    Binary::Union => g.union(&h),
                }
            }
        }
    }
}

impl GraphExpr {
    pub fn build(&self) -> corona_walk::Result<Graph> {
        self.node.build()
    }

    /// `(G, H)` when the expression is a corona at the top level.
    pub fn corona_parts(&self) -> Option<(&Node, &Node)> {
        match &self.node {
            Node::Binary(Binary::Corona, g, h) => Some((g, h)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let e = parse_graph_expr("corona(cartesian(complete(4),complete(2)),empty(2))").unwrap();
        assert_eq!(e.build().unwrap().n(), 24);
        assert_eq!(parse_graph_expr(" digon ").unwrap().node, Node::Digon);
        let p4 = parse_graph_expr("corona( wk2(2/sqrt(3)) , complete(1))").unwrap();
        assert_eq!(p4.node.to_string(), "corona(wk2(2/sqrt(3)),complete(1))");
        let g = p4.build().unwrap();
        assert_eq!(g.weight(0, 2), 2.0 / 3f64.sqrt());
        assert_eq!(parse_graph_expr("wk2(sqrt(2))").unwrap().node, Node::Wk2(Real::Sqrt(2)));
        assert_eq!(parse_graph_expr("wk2(1.5e-1)").unwrap().node, Node::Wk2(Real::Decimal(0.15)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_graph_expr("corona(path(3))").unwrap_err();
        assert!(e.message.contains("2 argument"), "{e}");
        assert_eq!(e.position, 0);
        let e = parse_graph_expr("corona(path(3), pth(2))").unwrap_err();
        assert_eq!(e.position, 16);
        assert!(e.to_string().contains("unknown graph `pth`"));
        assert_eq!(parse_graph_expr("path(3))").unwrap_err().position, 7);
        assert!(parse_graph_expr("path()").is_err());
        assert!(parse_graph_expr("digon(1)").is_err());
        assert!(parse_graph_expr("").is_err());
        assert!(parse_graph_expr("complete(2,3)").is_err());
    }

    fn leaf() -> impl Strategy<Value = Node> {
        prop_oneof![
            (0usize..7, 1u64..6).prop_map(|(i, n)| {
                let l = [Leaf::Complete, Leaf::Empty, Leaf::Path, Leaf::Star, Leaf::Cube, Leaf::Cocktail, Leaf::HalvedCube][i];
                Node::Leaf(l, n)
            }),
            Just(Node::Digon),
            (1e-3f64..1e3).prop_map(|x| Node::Wk2(Real::Decimal(x))),
            (1u64..50).prop_map(|n| Node::Wk2(Real::Sqrt(n))),
            (1u64..9, 1u64..50).prop_map(|(a, n)| Node::Wk2(Real::OverSqrt(a as f64, n))),
        ]
    }

    fn node() -> impl Strategy<Value = Node> {
        leaf().prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|g| Node::Selfloop(Box::new(g))),
                inner.clone().prop_map(|g| Node::Complement(Box::new(g))),
                (0usize..4, inner.clone(), inner).prop_map(|(i, g, h)| {
                    let op = [Binary::Corona, Binary::Cartesian, Binary::Join, Binary::Union][i];
                    Node::Binary(op, Box::new(g), Box::new(h))
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(n in node(), spaces in proptest::bool::ANY) {
            let mut text = n.to_string();
            if spaces {
                text = text.replace(',', " , ").replace('(', "( ");
            }
            let parsed = parse_graph_expr(&text).unwrap();
            prop_assert_eq!(&parsed.node, &n);
            prop_assert_eq!(parse_graph_expr(&parsed.to_string()).unwrap().node, n);
        }
    }
}
