//! Parser for candidate strings such as `pos|exp~sal`.
//!
//! ```text
//! oc-spec  = [ context "|" ] name "~" name
//! ofd-spec = [ context "|" ] name
//! od-spec  = [ context "|" ] name "->" name
//! context  = [ name *( "," name ) ]
//! ```
//!
//! A name is any non-empty text without `|`, `,`, `~` or `->`, trimmed of
//! surrounding whitespace.

/// Which flag the candidate came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecKind {
    /// `--oc`.
    Oc,
    /// `--ofd`.
    Ofd,
    /// `--od`.
    Od,
}

/// A parsed candidate, by attribute name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSpec {
    /// Context names.
    pub context: Vec<String>,
    /// `A` of `A~B` or `A->B`.
    pub lhs: Option<String>,
    /// `B` of `A~B` or `A->B`, or the single OFD attribute.
    pub rhs: String,
}

fn name(raw: &str, whole: &str) -> Result<String, String> {
    let n = raw.trim();
    if n.is_empty() {
        return Err(format!("`{whole}`: empty attribute name"));
    }
    if n.contains(['|', ',', '~']) || n.contains("->") {
        return Err(format!("`{whole}`: malformed attribute name `{n}`"));
    }
    Ok(n.to_owned())
}

impl CandidateSpec {
    /// Parses `text` according to `kind`.
    pub fn parse(text: &str, kind: SpecKind) -> Result<Self, String> {
        let (ctx, body) = match text.split_once('|') {
            Some((c, b)) => (c, b),
            None => ("", text),
        };
        let context = if ctx.trim().is_empty() {
            Vec::new()
        } else {
            ctx.split(',').map(|n| name(n, text)).collect::<Result<_, _>>()?
        };
        let (lhs, rhs) = match kind {
            SpecKind::Ofd => (None, name(body, text)?),
            SpecKind::Oc | SpecKind::Od => {
                let sep = if kind == SpecKind::Oc { "~" } else { "->" };
                let (l, r) = body.split_once(sep).ok_or_else(|| format!("`{text}`: expected `A{sep}B`"))?;
                (Some(name(l, text)?), name(r, text)?)
            }
        };
        Ok(CandidateSpec { context, lhs, rhs })
    }
}
