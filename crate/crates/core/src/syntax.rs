//! Abstract and concrete syntax for the process language.
//!
//! The language has deadlock `0`, action prefix `a.P`, binary choice `P + Q`,
//! interleaving merge `P || Q`, and prefix iteration `a*P`. Actions are
//! lowercase identifiers; the reserved word `tau` is the internal action.
//! Prefix and iteration bind strongest, then merge, then choice; the binary
//! operators associate to the left.

use std::fmt;

/// An action label: either the internal action or a named visible action.
///
/// The derived order puts the internal action first and sorts visible actions
/// by name; exports and deterministic iteration rely on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    /// The internal action, written `tau` in concrete syntax.
    Silent,
    /// A visible action named by an identifier matching `[a-z][a-zA-Z0-9_]*`.
    Visible(String),
}

/// Rejected visible-action name.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid action name {name:?}: {reason}")]
pub struct InvalidAction {
    pub name: String,
    pub reason: &'static str,
}

fn valid_action_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Action {
    pub fn silent() -> Self {
        Action::Silent
    }

    /// Makes a visible action, rejecting malformed names and the reserved
    /// word `tau`.
    pub fn visible(name: &str) -> Result<Self, InvalidAction> {
        if name == "tau" {
            return Err(InvalidAction {
                name: name.to_owned(),
                reason: "tau is reserved for the internal action",
            });
        }
        if !valid_action_name(name) {
            return Err(InvalidAction {
                name: name.to_owned(),
                reason: "action names match [a-z][a-zA-Z0-9_]*",
            });
        }
        Ok(Action::Visible(name.to_owned()))
    }

    pub fn is_silent(&self) -> bool {
        matches!(self, Action::Silent)
    }

    /// The concrete-syntax spelling: `tau` or the visible name.
    pub fn label(&self) -> &str {
        match self {
            Action::Silent => "tau",
            Action::Visible(name) => name,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A closed process expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProcessExpr {
    /// Deadlock, written `0`.
    Nil,
    /// Action prefix `a.P`.
    Prefix(Action, Box<ProcessExpr>),
    /// Binary choice `P + Q`.
    Choice(Box<ProcessExpr>, Box<ProcessExpr>),
    /// Interleaving merge `P || Q`.
    Merge(Box<ProcessExpr>, Box<ProcessExpr>),
    /// Prefix iteration `a*P`: repeat `a` any number of times, or proceed as `P`.
    Iter(Action, Box<ProcessExpr>),
}

impl ProcessExpr {
    pub fn nil() -> Self {
        ProcessExpr::Nil
    }

    pub fn prefix(act: Action, body: ProcessExpr) -> Self {
        ProcessExpr::Prefix(act, Box::new(body))
    }

    pub fn choice(left: ProcessExpr, right: ProcessExpr) -> Self {
        ProcessExpr::Choice(Box::new(left), Box::new(right))
    }

    pub fn merge(left: ProcessExpr, right: ProcessExpr) -> Self {
        ProcessExpr::Merge(Box::new(left), Box::new(right))
    }

    pub fn iter(act: Action, body: ProcessExpr) -> Self {
        ProcessExpr::Iter(act, Box::new(body))
    }

    /// Number of AST nodes; handy for size caps in generators and tests.
    pub fn size(&self) -> usize {
        match self {
            ProcessExpr::Nil => 1,
            ProcessExpr::Prefix(_, body) | ProcessExpr::Iter(_, body) => 1 + body.size(),
            ProcessExpr::Choice(l, r) | ProcessExpr::Merge(l, r) => 1 + l.size() + r.size(),
        }
    }
}

impl fmt::Display for ProcessExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_expr(self))
    }
}

/// Syntax error with a 1-based source position and the token set that would
/// have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    /// Description of the offending input, e.g. `"'#'"` or `"end of input"`.
    pub found: String,
    /// Tokens acceptable at this position.
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: expected ", self.line, self.col)?;
        for (i, tok) in self.expected.iter().enumerate() {
            if i > 0 {
                if i + 1 == self.expected.len() {
                    f.write_str(" or ")?;
                } else {
                    f.write_str(", ")?;
                }
            }
            f.write_str(tok)?;
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    Dot,
    Star,
    Plus,
    Par,
    LParen,
    RParen,
    Eof,
    /// A character no token starts with; reported at the parse position.
    Bad(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier {name:?}"),
            Tok::Zero => "'0'".into(),
            Tok::Dot => "'.'".into(),
            Tok::Star => "'*'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Par => "'||'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Eof => "end of input".into(),
            Tok::Bad(c) => format!("{:?}", c),
        }
    }
}

struct Parser<'a> {
    rest: std::str::Chars<'a>,
    line: u32,
    col: u32,
    tok: Tok,
    tok_line: u32,
    tok_col: u32,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let mut p = Parser {
            rest: text.chars(),
            line: 1,
            col: 1,
            tok: Tok::Eof,
            tok_line: 1,
            tok_col: 1,
        };
        p.advance();
        p
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.rest.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    /// Scans the next token into `self.tok`, skipping whitespace.
    fn advance(&mut self) {
        loop {
            let mut peek = self.rest.clone();
            let (line, col) = (self.line, self.col);
            let c = match peek.next() {
                None => {
                    self.tok = Tok::Eof;
                    self.tok_line = line;
                    self.tok_col = col;
                    return;
                }
                Some(c) => c,
            };
            if c.is_whitespace() {
                self.bump();
                continue;
            }
            self.tok_line = line;
            self.tok_col = col;
            self.tok = match c {
                '0' => {
                    self.bump();
                    Tok::Zero
                }
                '.' => {
                    self.bump();
                    Tok::Dot
                }
                '*' => {
                    self.bump();
                    Tok::Star
                }
                '+' => {
                    self.bump();
                    Tok::Plus
                }
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                '|' => {
                    self.bump();
                    if self.rest.clone().next() == Some('|') {
                        self.bump();
                        Tok::Par
                    } else {
                        Tok::Bad('|')
                    }
                }
                c if c.is_ascii_lowercase() => {
                    let mut name = String::new();
                    name.push(c);
                    self.bump();
                    while let Some(n) = self.rest.clone().next() {
                        if n.is_ascii_alphanumeric() || n == '_' {
                            name.push(n);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Ident(name)
                }
                other => {
                    self.bump();
                    Tok::Bad(other)
                }
            };
            return;
        }
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError {
            line: self.tok_line,
            col: self.tok_col,
            found: self.tok.describe(),
            expected,
        }
    }

    /// choice level: `merge ('+' merge)*`
    fn expr(&mut self) -> Result<ProcessExpr, ParseError> {
        let mut acc = self.merge()?;
        while self.tok == Tok::Plus {
            self.advance();
            let rhs = self.merge()?;
            acc = ProcessExpr::choice(acc, rhs);
        }
        Ok(acc)
    }

    /// merge level: `prefix ('||' prefix)*`
    fn merge(&mut self) -> Result<ProcessExpr, ParseError> {
        let mut acc = self.prefix()?;
        while self.tok == Tok::Par {
            self.advance();
            let rhs = self.prefix()?;
            acc = ProcessExpr::merge(acc, rhs);
        }
        Ok(acc)
    }

    /// prefix level: `action '.' prefix`, `action '*' prefix`, a bare action
    /// (shorthand for `action.0`), or an atom.
    fn prefix(&mut self) -> Result<ProcessExpr, ParseError> {
        match self.tok.clone() {
            Tok::Ident(name) => {
                self.advance();
                let act = if name == "tau" {
                    Action::Silent
                } else {
                    Action::Visible(name)
                };
                match self.tok {
                    Tok::Dot => {
                        self.advance();
                        Ok(ProcessExpr::prefix(act, self.prefix()?))
                    }
                    Tok::Star => {
                        self.advance();
                        Ok(ProcessExpr::iter(act, self.prefix()?))
                    }
                    _ => Ok(ProcessExpr::prefix(act, ProcessExpr::Nil)),
                }
            }
            Tok::Zero => {
                self.advance();
                Ok(ProcessExpr::Nil)
            }
            Tok::LParen => {
                self.advance();
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(self.error(vec!["'+'", "'||'", "')'"]));
                }
                self.advance();
                Ok(inner)
            }
            _ => Err(self.error(vec!["'0'", "'('", "an action name", "'tau'"])),
        }
    }
}

/// Parses the concrete syntax into an expression.
pub fn parse_expr(text: &str) -> Result<ProcessExpr, ParseError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    if p.tok != Tok::Eof {
        return Err(p.error(vec!["'+'", "'||'", "end of input"]));
    }
    Ok(e)
}

fn prec(e: &ProcessExpr) -> u8 {
    match e {
        ProcessExpr::Choice(..) => 1,
        ProcessExpr::Merge(..) => 2,
        ProcessExpr::Prefix(..) | ProcessExpr::Iter(..) => 3,
        ProcessExpr::Nil => 4,
    }
}

fn fmt_prec(e: &ProcessExpr, min: u8, out: &mut String) {
    let wrap = prec(e) < min;
    if wrap {
        out.push('(');
    }
    match e {
        ProcessExpr::Nil => out.push('0'),
        ProcessExpr::Prefix(act, body) => {
            out.push_str(act.label());
            out.push('.');
            fmt_prec(body, 3, out);
        }
        ProcessExpr::Iter(act, body) => {
            out.push_str(act.label());
            out.push('*');
            fmt_prec(body, 3, out);
        }
        ProcessExpr::Merge(l, r) => {
            fmt_prec(l, 2, out);
            out.push_str(" || ");
            fmt_prec(r, 3, out);
        }
        ProcessExpr::Choice(l, r) => {
            fmt_prec(l, 1, out);
            out.push_str(" + ");
            fmt_prec(r, 2, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

/// Renders an expression with the minimal parentheses that reparse to the
/// same tree. `tau` prints as `tau`; bodies of prefixes never use the bare
/// action shorthand.
pub fn format_expr(e: &ProcessExpr) -> String {
    let mut out = String::new();
    fmt_prec(e, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vis(name: &str) -> Action {
        Action::visible(name).unwrap()
    }

    #[test]
    fn parses_iteration_with_silent_prefix_body() {
        let e = parse_expr("a*tau.b.0").unwrap();
        let want = ProcessExpr::iter(
            vis("a"),
            ProcessExpr::prefix(
                Action::Silent,
                ProcessExpr::prefix(vis("b"), ProcessExpr::Nil),
            ),
        );
        assert_eq!(e, want);
    }

    #[test]
    fn parses_deadlock() {
        assert_eq!(parse_expr("0").unwrap(), ProcessExpr::Nil);
    }

    #[test]
    fn merge_binds_tighter_than_choice() {
        let e = parse_expr("a.0 + b.0 || c.0").unwrap();
        let want = ProcessExpr::choice(
            ProcessExpr::prefix(vis("a"), ProcessExpr::Nil),
            ProcessExpr::merge(
                ProcessExpr::prefix(vis("b"), ProcessExpr::Nil),
                ProcessExpr::prefix(vis("c"), ProcessExpr::Nil),
            ),
        );
        assert_eq!(e, want);
    }

    #[test]
    fn binary_operators_associate_left() {
        let abc = parse_expr("a.0 + b.0 + c.0").unwrap();
        let want = ProcessExpr::choice(
            ProcessExpr::choice(
                ProcessExpr::prefix(vis("a"), ProcessExpr::Nil),
                ProcessExpr::prefix(vis("b"), ProcessExpr::Nil),
            ),
            ProcessExpr::prefix(vis("c"), ProcessExpr::Nil),
        );
        assert_eq!(abc, want);

        let merged = parse_expr("a.0 || b.0 || c.0").unwrap();
        let want = ProcessExpr::merge(
            ProcessExpr::merge(
                ProcessExpr::prefix(vis("a"), ProcessExpr::Nil),
                ProcessExpr::prefix(vis("b"), ProcessExpr::Nil),
            ),
            ProcessExpr::prefix(vis("c"), ProcessExpr::Nil),
        );
        assert_eq!(merged, want);
    }

    #[test]
    fn bare_action_is_prefix_of_deadlock() {
        assert_eq!(
            parse_expr("a").unwrap(),
            ProcessExpr::prefix(vis("a"), ProcessExpr::Nil)
        );
        assert_eq!(
            parse_expr("a*tau").unwrap(),
            ProcessExpr::iter(
                vis("a"),
                ProcessExpr::prefix(Action::Silent, ProcessExpr::Nil)
            )
        );
    }

    #[test]
    fn iteration_body_extends_through_prefixes() {
        // a*b.c.0 is a*(b.c.0), not (a*b).c.0
        let e = parse_expr("a*b.c.0").unwrap();
        let want = ProcessExpr::iter(
            vis("a"),
            ProcessExpr::prefix(vis("b"), ProcessExpr::prefix(vis("c"), ProcessExpr::Nil)),
        );
        assert_eq!(e, want);
    }

    #[test]
    fn silent_iteration_is_allowed() {
        let e = parse_expr("tau*0").unwrap();
        assert_eq!(e, ProcessExpr::iter(Action::Silent, ProcessExpr::Nil));
    }

    #[test]
    fn reports_position_and_expectations() {
        let err = parse_expr("a.0 +").unwrap_err();
        assert_eq!((err.line, err.col), (1, 6));
        assert_eq!(err.found, "end of input");
        assert!(err.expected.contains(&"'0'"));

        let err = parse_expr("(a.0").unwrap_err();
        assert_eq!((err.line, err.col), (1, 5));
        assert!(err.expected.contains(&"')'"));

        let err = parse_expr("a.0 # b.0").unwrap_err();
        assert_eq!((err.line, err.col), (1, 5));
        assert_eq!(err.found, "'#'");

        let err = parse_expr("a.0 |\nb.0").unwrap_err();
        assert_eq!((err.line, err.col), (1, 5));

        let err = parse_expr("a.0 +\n\n  )").unwrap_err();
        assert_eq!((err.line, err.col), (3, 3));
    }

    #[test]
    fn rejects_uppercase_and_leading_digit_names() {
        assert!(parse_expr("A.0").is_err());
        // "a1b" is fine, "1a" lexes as Bad-ish: '1' is not a token start
        assert!(parse_expr("1a").is_err());
        assert!(parse_expr("a1_b.0").is_ok());
    }

    #[test]
    fn visible_action_constructor_rejects_tau_and_bad_names() {
        assert!(Action::visible("tau").is_err());
        assert!(Action::visible("Tau").is_err());
        assert!(Action::visible("").is_err());
        assert!(Action::visible("x9_y").is_ok());
    }

    #[test]
    fn formats_with_minimal_parentheses() {
        let cases = [
            "0",
            "a.0",
            "tau.a.0",
            "a*tau.b.0",
            "a.0 + b.0 || c.0",
            "(a.0 + b.0) || c.0",
            "a.(b.0 + c.0)",
            "a.0 + (b.0 + c.0)",
            "a.0 || (b.0 || c.0)",
            "a.0 || b.0 || c.0",
            "tau*(a.0 + b.0)",
            "a.(b.0 || c.0)",
        ];
        for text in cases {
            let e = parse_expr(text).unwrap();
            assert_eq!(format_expr(&e), text, "canonical form of {text}");
            let back = parse_expr(&format_expr(&e)).unwrap();
            assert_eq!(back, e, "round trip of {text}");
        }
    }

    #[test]
    fn formats_merge_of_deadlocks() {
        let e = ProcessExpr::merge(ProcessExpr::Nil, ProcessExpr::Nil);
        assert_eq!(format_expr(&e), "0 || 0");
    }

    #[test]
    fn bare_action_shorthand_prints_expanded() {
        let e = parse_expr("a*tau").unwrap();
        assert_eq!(format_expr(&e), "a*tau.0");
        assert_eq!(parse_expr(&format_expr(&e)).unwrap(), e);
    }
}
