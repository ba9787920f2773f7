use super::{parse_presentation, Presentation};
use crate::error::{Error, Result};

/// A named family of presentations, selectable at runtime.
pub trait PresentationFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn usage(&self) -> &'static str;
    fn build(&self, params: &[i64]) -> Result<Presentation>;
}

struct Family {
    name: &'static str,
    usage: &'static str,
    arity: usize,
    text: fn(&[i64]) -> Result<String>,
}

impl PresentationFamily for Family {
    fn name(&self) -> &'static str {
        self.name
    }

    fn usage(&self) -> &'static str {
        self.usage
    }

    fn build(&self, params: &[i64]) -> Result<Presentation> {
        if params.len() != self.arity {
            return Err(Error::BadParameter(format!(
                "{} takes {} parameter(s), got {}",
                self.usage,
                self.arity,
                params.len()
            )));
        }
        parse_presentation(&(self.text)(params)?)
    }
}

fn names(prefix: &str, n: i64) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn free(p: &[i64]) -> Result<String> {
    let n = p[0];
    if n < 1 {
        return Err(Error::BadParameter("free(n) needs n >= 1".into()));
    }
    Ok(format!("< {} | >", names("x", n).join(", ")))
}

fn bs(p: &[i64]) -> Result<String> {
    let (m, n) = (p[0], p[1]);
    if !(0 < m && m <= n.abs()) {
        return Err(Error::BadParameter("bs(m,n) needs 0 < m <= |n|".into()));
    }
    Ok(format!("< x, y | x y^{m} x^-1 y^{} >", -n))
}

fn parafree(p: &[i64]) -> Result<String> {
    let (m, n) = (p[0], p[1]);
    Ok(format!("< x, y, z | x z^{m} x z^{} x^-1 z^{n} y z^{} y^-1 >", -m, -n))
}

fn surface(p: &[i64]) -> Result<String> {
    let g = p[0];
    if g < 1 {
        return Err(Error::BadParameter("surface(g) needs g >= 1".into()));
    }
    let mut gens = names("x", g);
    gens.extend(names("y", g));
    let rel: Vec<String> = (1..=g).map(|i| format!("[x{i}, y{i}]")).collect();
    Ok(format!("< {} | {} >", gens.join(", "), rel.join(" ")))
}

fn nonorientable(p: &[i64]) -> Result<String> {
    let g = p[0];
    if g < 1 {
        return Err(Error::BadParameter("nonorientable(g) needs g >= 1".into()));
    }
    let rel: Vec<String> = (1..=g).map(|i| format!("x{i}^2")).collect();
    Ok(format!("< {} | {} >", names("x", g).join(", "), rel.join(" ")))
}

fn klein(_: &[i64]) -> Result<String> {
    Ok("< x, y | y x y^-1 x >".into())
}

fn braid(p: &[i64]) -> Result<String> {
    let n = p[0];
    if n < 3 {
        return Err(Error::BadParameter("braid(n) needs n >= 3".into()));
    }
    let mut rels = vec![format!("y^{n} (y x)^{}", 1 - n)];
    for i in 2..=n / 2 {
        rels.push(format!("[y^{i} x y^{}, x]", -i));
    }
    Ok(format!("< x, y | {} >", rels.join(", ")))
}

fn braid3_split(_: &[i64]) -> Result<String> {
    Ok("< x, a, b | a^(x) b^-1, b^(x) (b a^-1)^-1 >".into())
}

fn braid4_split(_: &[i64]) -> Result<String> {
    Ok("< x, a, b, c, d | a^(x) b^-1, b^(x) (b a^-1)^-1, c^(x) (d c)^-1, d^(x) d^-1, \
        c^(a) d^-1, c^(b) (d^-1 c)^-1, d^(a) (d c^-1 d^2)^-1, d^(b) (d c^-1 d)^-1 >"
        .into())
}

fn hillman_link(_: &[i64]) -> Result<String> {
    // conjugation here is x^y = y x y^-1, written out as x^(y^-1)
    Ok("< x1, x2, x3, x4 | x1^(x4) (x4 x1)^(x2^-1 x1^-1 x2), \
        (x3^-1 x1 x4)^(x2^-1 x1 x2) (x1 x4)^(x3^-1), \
        [x1^-1 x4^-1 x3 x1 x4 x3^-2 x4, x2] >"
        .into())
}

static FAMILIES: &[Family] = &[
    Family { name: "free", usage: "free(n)", arity: 1, text: free },
    Family { name: "bs", usage: "bs(m,n)", arity: 2, text: bs },
    Family { name: "parafree", usage: "parafree(m,n)", arity: 2, text: parafree },
    Family { name: "surface", usage: "surface(g)", arity: 1, text: surface },
    Family { name: "nonorientable", usage: "nonorientable(g)", arity: 1, text: nonorientable },
    Family { name: "klein", usage: "klein", arity: 0, text: klein },
    Family { name: "braid", usage: "braid(n)", arity: 1, text: braid },
    Family { name: "braid3_split", usage: "braid3_split", arity: 0, text: braid3_split },
    Family { name: "braid4_split", usage: "braid4_split", arity: 0, text: braid4_split },
    Family { name: "hillman_link", usage: "hillman_link", arity: 0, text: hillman_link },
];

pub fn presentation_families() -> Vec<&'static dyn PresentationFamily> {
    FAMILIES.iter().map(|f| f as &dyn PresentationFamily).collect()
}

/// Splits `name(a,b)` into the name and integer parameters.
pub(crate) fn split_call(spec: &str) -> Result<(String, Vec<i64>)> {
    let spec = spec.trim();
    let Some(open) = spec.find('(') else {
        return Ok((spec.to_string(), Vec::new()));
    };
    if !spec.ends_with(')') {
        return Err(Error::Syntax { pos: spec.len(), msg: "expected `)`".into() });
    }
    let name = spec[..open].trim().to_string();
    let inner = &spec[open + 1..spec.len() - 1];
    let mut params = Vec::new();
    if !inner.trim().is_empty() {
        let mut offset = open + 1;
        for part in inner.split(',') {
            let v = part.trim().parse::<i64>().map_err(|_| Error::Syntax {
                pos: offset,
                msg: format!("expected integer parameter, found `{}`", part.trim()),
            })?;
            params.push(v);
            offset += part.len() + 1;
        }
    }
    Ok((name, params))
}

/// Builds a named presentation such as `bs(2,4)` or `klein`.
pub fn builtin_presentation(spec: &str) -> Result<Presentation> {
    let (name, params) = split_call(spec)?;
    let fam = FAMILIES
        .iter()
        .find(|f| f.name == name.to_ascii_lowercase())
        .ok_or_else(|| Error::UnknownFamily(name.clone()))?;
    fam.build(&params)
}
