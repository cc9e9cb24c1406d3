//! Named representations and the small expression language over them.
//!
//! ```text
//! expr  := term ('+' term)*
//! term  := unary ('*k^' int)*
//! unary := '~' unary | atom
//! atom  := 'rho0' | 'kappa^' int | 'p1(' int ')' | '(' expr ')'
//! ```

use vvmf_core::{
    build_kappa_power, build_p1_permutation, build_rho0, contragredient, direct_sum,
    tensor_kappa, ModularRepresentation, Settings,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("{message} at offset {offset} in {expr:?}")]
    Syntax { expr: String, offset: usize, message: String },
    #[error("unknown catalog name {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Core(#[from] vvmf_core::Error),
}

/// Largest level accepted for `p1(N)`.
pub const P1_MAX_LEVEL: u32 = 30;

/// The names shown by `catalog list`.
pub fn names() -> Vec<String> {
    let mut out = vec!["rho0".to_string()];
    out.extend((1..12).map(|j| format!("kappa^{}", j)));
    out.extend((2..=7).map(|n| format!("p1({})", n)));
    out
}

/// Builds a single catalog atom.
pub fn lookup(name: &str) -> Result<ModularRepresentation, CatalogError> {
    let unknown = || CatalogError::UnknownName(name.to_string());
    if name == "rho0" {
        return Ok(build_rho0());
    }
    if let Some(j) = name.strip_prefix("kappa^") {
        let j: i64 = j.parse().map_err(|_| unknown())?;
        if !(0..12).contains(&j) {
            return Err(unknown());
        }
        return Ok(build_kappa_power(j));
    }
    if let Some(n) = name.strip_prefix("p1(").and_then(|r| r.strip_suffix(')')) {
        let n: u32 = n.parse().map_err(|_| unknown())?;
        if !(2..=P1_MAX_LEVEL).contains(&n) {
            return Err(unknown());
        }
        return Ok(build_p1_permutation(n)?);
    }
    Err(unknown())
}

/// Evaluates a catalog expression. The result is named after the expression.
pub fn evaluate(expr: &str, settings: &Settings) -> Result<ModularRepresentation, CatalogError> {
    let mut p = Parser { src: expr, pos: 0, settings };
    let rep = p.expr()?;
    p.skip_ws();
    if p.pos < expr.len() {
        return Err(p.error("unexpected input"));
    }
    let name: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    Ok(rep.with_name(name))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    settings: &'a Settings,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn error(&self, message: &str) -> CatalogError {
        CatalogError::Syntax { expr: self.src.to_string(), offset: self.pos, message: message.to_string() }
    }

    fn integer(&mut self) -> Result<i64, CatalogError> {
        self.skip_ws();
        let rest = self.rest();
        let sign = usize::from(rest.starts_with('-'));
        let digits = rest[sign..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        let text = &rest[..sign + digits];
        let value = text.parse().map_err(|_| self.error("integer out of range"))?;
        self.pos += text.len();
        Ok(value)
    }

    fn expr(&mut self) -> Result<ModularRepresentation, CatalogError> {
        let mut acc = self.term()?;
        while self.eat("+") {
            let rhs = self.term()?;
            acc = direct_sum(&acc, &rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ModularRepresentation, CatalogError> {
        let mut acc = self.unary()?;
        while self.eat("*") {
            if !self.eat("k^") {
                return Err(self.error("expected k^j after *"));
            }
            let j = self.integer()?;
            acc = tensor_kappa(&acc, j);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ModularRepresentation, CatalogError> {
        if self.eat("~") {
            let inner = self.unary()?;
            return Ok(contragredient(&inner, self.settings.tol, self.settings.order_cap)?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<ModularRepresentation, CatalogError> {
        if self.eat("(") {
            let inner = self.expr()?;
            if !self.eat(")") {
                return Err(self.error("expected )"));
            }
            return Ok(inner);
        }
        self.skip_ws();
        let start = self.pos;
        if self.eat("rho0") {
            return lookup("rho0");
        }
        if self.eat("kappa^") {
            let j = self.integer()?;
            return lookup(&format!("kappa^{}", j));
        }
        if self.eat("p1(") {
            let n = self.integer()?;
            if !self.eat(")") {
                return Err(self.error("expected )"));
            }
            return lookup(&format!("p1({})", n));
        }
        let word: String =
            self.rest().chars().take_while(|c| c.is_alphanumeric() || "^()_".contains(*c)).collect();
        if word.is_empty() {
            self.pos = start;
            return Err(self.error("expected a representation"));
        }
        Err(CatalogError::UnknownName(word))
    }
}
