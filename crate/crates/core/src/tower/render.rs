use super::{Element, GroupTower};

impl GroupTower {
    /// Canonical text form; parses back to the same element.
    pub fn render(&self, g: &Element) -> String {
        let mut parts = Vec::new();
        self.render_into(g, &mut parts);
        if parts.is_empty() {
            "1".into()
        } else {
            merge_powers(parts).join("*")
        }
    }

    fn render_into(&self, g: &Element, out: &mut Vec<String>) {
        match g {
            Element::Word(w) => {
                if !w.is_empty() {
                    out.push(w.render(&self.alphabet));
                }
            }
            Element::Hnn { pieces, blocks, .. } => {
                for (j, p) in pieces.iter().enumerate() {
                    self.render_into(p, out);
                    let Some(b) = blocks.get(j) else { break };
                    let l = &self.letters[b.letter];
                    out.push(if b.sign > 0 { l.name.clone() } else { format!("{}^-1", l.name) });
                    let (gens, _) = l.tail(b.sign);
                    for (gen, &e) in gens.iter().zip(&b.offset) {
                        if e == 0 {
                            continue;
                        }
                        let r = self.render(gen);
                        let atom =
                            if r.chars().all(|c| c.is_alphanumeric() || c == '_') { r } else { format!("({r})") };
                        out.push(if e == 1 { atom } else { format!("{atom}^{e}") });
                    }
                }
            }
        }
    }
}

/// `name^i`, `name^j` → `name^(i+j)` for adjacent bare-identifier tokens.
fn merge_powers(parts: Vec<String>) -> Vec<String> {
    fn split(tok: &str) -> Option<(&str, i64)> {
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (n, e.parse().ok()?),
            None => (tok, 1),
        };
        crate::expr::is_ident(name).then_some((name, exp))
    }
    let mut out: Vec<String> = Vec::new();
    for tok in parts {
        if let (Some(prev), Some((name, e))) = (out.last(), split(&tok)) {
            if let Some((pname, pe)) = split(prev) {
                if pname == name && pe + e != 0 {
                    let merged = format!("{name}^{}", pe + e);
                    *out.last_mut().unwrap() = merged;
                    continue;
                }
            }
        }
        out.push(tok);
    }
    out
}
