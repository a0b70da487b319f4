//! The text grammar the CLI speaks: flat basis factors (`v3`, `z^1*v[2]`),
//! tensor and wedge words with semi-infinite tails (`v1 ^ v-1 ^ v-2 ...`,
//! `v3 (x) v1 | vac(-2)`), linear combinations with canonical coefficient
//! strings, generator labels (`E[0;-2]`), and partitions (`[3,2]`).
//!
//! Every renderer here emits the canonical form, and every parser accepts at
//! least that form, so each command's output parses back to the same value.
//! Errors carry the byte offset of the first token that failed.

use num_bigint::BigInt;

use qwedge_core::{
    Algebra, FlatIndex, GeneratorKind, GeneratorLabel, LaurentQ, ParseError, Partition, PureTensor,
    TensorVector, WedgeTerm, WedgeVector,
};

/// Largest magnitude accepted for any parsed index-like integer (flat values,
/// spectral exponents, charges, partition parts, generator degrees). Far
/// beyond any mathematical use, yet small enough that every sum, difference,
/// and rank multiple the engine forms stays inside `i64`.
const INDEX_MAGNITUDE_LIMIT: u64 = 1 << 40;

/// Cursor over the source text. Whitespace is insignificant between all
/// tokens, so the scanner skips it before every read.
struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// The next significant byte, without consuming it.
    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, message)
    }

    /// Consumes `token` if it is next; reports whether it did.
    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    /// A signed decimal integer.
    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut p = self.pos;
        if self.src.get(p) == Some(&b'-') {
            p += 1;
        }
        let digits = p;
        while p < self.src.len() && self.src[p].is_ascii_digit() {
            p += 1;
        }
        if p == digits {
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..p]).expect("digits are ascii");
        let value: i64 = text
            .parse()
            .map_err(|_| ParseError::new(start, "integer out of range"))?;
        // Indices, exponents, and charges feed i64 arithmetic (shifts by the
        // rank, sums with other indices); a generous magnitude cap keeps every
        // downstream combination exactly representable.
        if value.unsigned_abs() > INDEX_MAGNITUDE_LIMIT {
            return Err(ParseError::new(
                start,
                "integer exceeds the supported index range (|x| <= 2^40)",
            ));
        }
        self.pos = p;
        Ok(value)
    }

    /// An unsigned decimal integer as a big integer (coefficients can be
    /// arbitrarily large).
    fn big_natural(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut p = self.pos;
        while p < self.src.len() && self.src[p].is_ascii_digit() {
            p += 1;
        }
        if p == start {
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..p]).expect("digits are ascii");
        self.pos = p;
        Ok(text.parse().expect("digits parse"))
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            Err(self.error("unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

/// One basis factor, resolved to its flat index. Accepts the flat form
/// `v<m>`, the letter form `v[<i>]`, and the letter-with-exponent form
/// `z^<j>*v[<i>]` (affine only; the flat index is `i - n*j`).
fn factor(s: &mut Scanner, alg: Algebra) -> Result<FlatIndex, ParseError> {
    let at = {
        s.skip_ws();
        s.pos
    };
    if s.eat("z") {
        let n = match alg {
            Algebra::Affine { n } => n as i64,
            Algebra::SlInf => {
                return Err(ParseError::new(
                    at,
                    "the rank-free algebra has no spectral variable; use flat `v<m>`",
                ))
            }
        };
        s.expect("^")?;
        let j = s.integer()?;
        s.expect("*")?;
        s.expect("v")?;
        s.expect("[")?;
        let i = s.integer()?;
        s.expect("]")?;
        check_letter(s, alg, i)?;
        return n
            .checked_mul(j)
            .and_then(|nj| i.checked_sub(nj))
            .ok_or_else(|| ParseError::new(at, "spectral exponent overflows the flat index"));
    }
    s.expect("v")?;
    if s.eat("[") {
        // letter form with exponent 0: the flat index is the letter itself
        let i = s.integer()?;
        s.expect("]")?;
        check_letter(s, alg, i)?;
        return Ok(i);
    }
    s.integer()
}

fn check_letter(s: &Scanner, alg: Algebra, i: i64) -> Result<(), ParseError> {
    if let Algebra::Affine { n } = alg {
        if !(1..=n as i64).contains(&i) {
            return Err(s.error(format!("letter {i} outside 1..={n}")));
        }
    }
    Ok(())
}

/// A word: factors joined by `^` or `(x)`, with an optional semi-infinite
/// tail written either `| vac(T)` or as two consecutive flat values
/// followed by `...`.
fn word(s: &mut Scanner, alg: Algebra) -> Result<PureTensor, ParseError> {
    let mut values = vec![factor(s, alg)?];
    loop {
        if s.eat("^") || s.eat("(x)") {
            values.push(factor(s, alg)?);
        } else {
            break;
        }
    }
    if s.eat("...") {
        let at = s.pos - 3;
        if values.len() < 2 || values[values.len() - 2] != values[values.len() - 1] + 1 {
            return Err(ParseError::new(
                at,
                "`...` must follow two consecutive descending flat values",
            ));
        }
        let tail = values.pop().expect("nonempty");
        return Ok(PureTensor::semi_infinite(values, tail));
    }
    if s.eat("|") {
        s.expect("vac")?;
        s.expect("(")?;
        let tail = s.integer()?;
        s.expect(")")?;
        return Ok(PureTensor::semi_infinite(values, tail));
    }
    Ok(PureTensor::finite(values))
}

/// A full word expression, with `vacuum<k>` accepted as a shorthand for the
/// canonical vacuum of class `k` (affine) or charge `k` (rank-free).
fn word_or_vacuum(s: &mut Scanner, alg: Algebra) -> Result<PureTensor, ParseError> {
    if s.eat("vacuum") {
        let k = s.integer()?;
        let term = match alg {
            Algebra::SlInf => WedgeTerm::charge_vacuum(k),
            Algebra::Affine { .. } => WedgeTerm::class_vacuum(alg, k),
        };
        return Ok(term.tensor().clone());
    }
    word(s, alg)
}

/// Parses a single word (tensor or wedge spelling) to a pure tensor.
pub fn parse_word(src: &str, alg: Algebra) -> Result<PureTensor, ParseError> {
    let mut s = Scanner::new(src);
    let t = word_or_vacuum(&mut s, alg)?;
    s.expect_end()?;
    Ok(t)
}

/// Parses a word that must already be normally ordered.
pub fn parse_wedge_term(src: &str, alg: Algebra) -> Result<WedgeTerm, ParseError> {
    let mut s = Scanner::new(src);
    let at = {
        s.skip_ws();
        s.pos
    };
    let t = word_or_vacuum(&mut s, alg)?;
    s.expect_end()?;
    WedgeTerm::new(t).map_err(|_| ParseError::new(at, "word is not strictly decreasing"))
}

/// One monomial of a coefficient: `3`, `-q`, `q^-2`, `2*q^5`. Returns the
/// parsed value plus whether a `*` was consumed that turned out to be the
/// coefficient/word separator rather than part of the monomial.
fn monomial(s: &mut Scanner) -> Result<(LaurentQ, bool), ParseError> {
    let negative = s.eat("-");
    let sign = if negative { -1 } else { 1 };
    if s.eat("q") {
        let k = if s.eat("^") { s.integer()? } else { 1 };
        return Ok((LaurentQ::monomial(sign, k), false));
    }
    let c = s.big_natural()? * sign;
    if s.eat("*") {
        if s.peek() == Some(b'q') {
            s.expect("q")?;
            let k = if s.eat("^") { s.integer()? } else { 1 };
            return Ok((LaurentQ::monomial(c, k), false));
        }
        // the star belonged to `<coeff> * (<word>)`
        return Ok((LaurentQ::int(c), true));
    }
    Ok((LaurentQ::int(c), false))
}

/// A coefficient in canonical form: monomials joined by ` + ` / ` - `.
fn laurent_sum(s: &mut Scanner) -> Result<LaurentQ, ParseError> {
    let (mut total, star) = monomial(s)?;
    if star {
        return Err(s.error("unexpected `*` inside a parenthesized coefficient"));
    }
    loop {
        let negative = if s.peek() == Some(b'+') {
            s.expect("+")?;
            false
        } else if s.peek() == Some(b'-') {
            s.expect("-")?;
            true
        } else {
            return Ok(total);
        };
        let (m, star) = monomial(s)?;
        if star {
            return Err(s.error("unexpected `*` inside a parenthesized coefficient"));
        }
        total = if negative { total - m } else { total + m };
    }
}

/// Parses a standalone coefficient string.
pub fn parse_laurent(src: &str) -> Result<LaurentQ, ParseError> {
    let mut s = Scanner::new(src);
    let c = laurent_sum(&mut s)?;
    s.expect_end()?;
    Ok(c)
}

/// One term of a linear combination: a bare word (unit coefficient), a
/// parenthesized word, `<monomial> * (<word>)`, or `(<sum>) * (<word>)`.
fn combination_term(s: &mut Scanner, alg: Algebra) -> Result<(LaurentQ, PureTensor), ParseError> {
    match s.peek() {
        Some(b'v') | Some(b'z') => Ok((LaurentQ::one(), word_or_vacuum(s, alg)?)),
        Some(b'(') => {
            s.expect("(")?;
            match s.peek() {
                Some(b'v') | Some(b'z') => {
                    let t = word_or_vacuum(s, alg)?;
                    s.expect(")")?;
                    Ok((LaurentQ::one(), t))
                }
                _ => {
                    let c = laurent_sum(s)?;
                    s.expect(")")?;
                    s.expect("*")?;
                    s.expect("(")?;
                    let t = word_or_vacuum(s, alg)?;
                    s.expect(")")?;
                    Ok((c, t))
                }
            }
        }
        _ => {
            let (c, star_taken) = monomial(s)?;
            if !star_taken {
                s.expect("*")?;
            }
            s.expect("(")?;
            let t = word_or_vacuum(s, alg)?;
            s.expect(")")?;
            Ok((c, t))
        }
    }
}

/// Parses a linear combination of normally ordered words into a wedge
/// vector. `0` denotes the zero vector.
pub fn parse_wedge_vector(src: &str, alg: Algebra) -> Result<WedgeVector, ParseError> {
    let mut s = Scanner::new(src);
    if s.eat("0") {
        s.expect_end()?;
        return Ok(WedgeVector::zero());
    }
    let mut v = WedgeVector::zero();
    let mut negate = false;
    loop {
        let at = {
            s.skip_ws();
            s.pos
        };
        let (c, t) = combination_term(&mut s, alg)?;
        let w = WedgeTerm::new(t)
            .map_err(|_| ParseError::new(at, "word is not strictly decreasing"))?;
        v.add_term(w, if negate { -c } else { c });
        if s.peek().is_none() {
            return Ok(v);
        }
        negate = !s.eat("+");
        if negate {
            s.expect("-")?;
        }
    }
}

/// Parses a linear combination of arbitrary words into a tensor vector.
pub fn parse_tensor_vector(src: &str, alg: Algebra) -> Result<TensorVector, ParseError> {
    let mut s = Scanner::new(src);
    if s.eat("0") {
        s.expect_end()?;
        return Ok(TensorVector::zero());
    }
    let mut v = TensorVector::zero();
    let mut negate = false;
    loop {
        let (c, t) = combination_term(&mut s, alg)?;
        v.add_term(t, if negate { -c } else { c });
        if s.peek().is_none() {
            return Ok(v);
        }
        negate = !s.eat("+");
        if negate {
            s.expect("-")?;
        }
    }
}

/// Parses a generator: `e[i]`, `f[i]`, `k[i]` (rank-free), `E[i]`, `F[i]`,
/// `K[i]` (affine), or graded `E[i;d]`, `F[i;d]`, `H[i;d]` (affine).
pub fn parse_generator(src: &str, n: usize) -> Result<GeneratorLabel, ParseError> {
    let mut s = Scanner::new(src);
    s.skip_ws();
    let at = s.pos;
    let name = match s.src.get(s.pos) {
        Some(&c) if c.is_ascii_alphabetic() => c as char,
        _ => return Err(s.error("expected a generator name")),
    };
    s.pos += 1;
    s.expect("[")?;
    let index = s.integer()?;
    let grade = if s.eat(";") { Some(s.integer()?) } else { None };
    s.expect("]")?;
    s.expect_end()?;
    let label = match (name, grade) {
        ('e', None) => GeneratorLabel::sl_inf(GeneratorKind::E, index),
        ('f', None) => GeneratorLabel::sl_inf(GeneratorKind::F, index),
        ('k', None) => GeneratorLabel::sl_inf(GeneratorKind::K, index),
        ('E', None) => GeneratorLabel::affine(n, GeneratorKind::E, index),
        ('F', None) => GeneratorLabel::affine(n, GeneratorKind::F, index),
        ('K', None) => GeneratorLabel::affine(n, GeneratorKind::K, index),
        ('H', None) => GeneratorLabel::affine(n, GeneratorKind::H, index),
        ('E', Some(d)) => GeneratorLabel::affine_graded(n, GeneratorKind::EGraded, index, d),
        ('F', Some(d)) => GeneratorLabel::affine_graded(n, GeneratorKind::FGraded, index, d),
        ('H', Some(d)) => GeneratorLabel::affine_graded(n, GeneratorKind::HGraded, index, d),
        ('e' | 'f' | 'k', Some(_)) => {
            return Err(ParseError::new(
                at,
                "graded pieces exist only for the affine generators E, F, H",
            ))
        }
        _ => {
            return Err(ParseError::new(
                at,
                "expected one of e, f, k (rank-free) or E, F, K, H (affine)",
            ))
        }
    };
    Ok(label)
}

/// Parses a partition like `[3,2]` or `[]`.
pub fn parse_partition(src: &str) -> Result<Partition, ParseError> {
    let mut s = Scanner::new(src);
    s.expect("[")?;
    let mut parts: Vec<u64> = Vec::new();
    if !s.eat("]") {
        loop {
            let at = {
                s.skip_ws();
                s.pos
            };
            let part = s.integer()?;
            if part < 1 {
                return Err(ParseError::new(at, "partition parts must be positive"));
            }
            if let Some(&prev) = parts.last() {
                if (part as u64) > prev {
                    return Err(ParseError::new(at, "partition parts must not increase"));
                }
            }
            parts.push(part as u64);
            if s.eat("]") {
                break;
            }
            s.expect(",")?;
        }
    }
    s.expect_end()?;
    Ok(Partition::new(parts))
}

/// Canonical form of one flat factor.
pub fn render_flat(m: FlatIndex) -> String {
    format!("v{m}")
}

fn render_tensor_with(t: &PureTensor, sep: &str) -> String {
    let t = t.canonical();
    let mut parts: Vec<String> = t.prefix().iter().copied().map(render_flat).collect();
    match t.tail_start() {
        None => parts.join(sep),
        Some(tail) => {
            parts.push(render_flat(tail));
            parts.push(render_flat(tail - 1));
            format!("{} ...", parts.join(sep))
        }
    }
}

/// Canonical wedge spelling: factors joined by ` ^ `, semi-infinite tails
/// shown as their first two values followed by `...`.
pub fn render_wedge_term(w: &WedgeTerm) -> String {
    render_tensor_with(w.tensor(), " ^ ")
}

/// Canonical tensor spelling: factors joined by ` (x) `.
pub fn render_tensor(t: &PureTensor) -> String {
    render_tensor_with(t, " (x) ")
}

fn render_combination(terms: Vec<(String, LaurentQ)>) -> String {
    let rendered: Vec<String> = terms
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(word, c)| {
            if c.is_one() {
                word
            } else if c.terms().count() == 1 {
                format!("{c} * ({word})")
            } else {
                format!("({c}) * ({word})")
            }
        })
        .collect();
    if rendered.is_empty() {
        return "0".to_string();
    }
    // join with ` - ` instead of ` + -`: monomial coefficients carry their
    // sign at the front of the term string
    let mut out = rendered[0].clone();
    for term in &rendered[1..] {
        match term.strip_prefix('-') {
            Some(positive) => {
                out.push_str(" - ");
                out.push_str(positive);
            }
            None => {
                out.push_str(" + ");
                out.push_str(term);
            }
        }
    }
    out
}

/// Canonical rendering of a wedge vector, terms in increasing label order.
pub fn render_wedge_vector(v: &WedgeVector) -> String {
    render_combination(
        v.iter()
            .map(|(w, c)| (render_wedge_term(w), c.clone()))
            .collect(),
    )
}

/// Canonical rendering of a tensor vector, terms in increasing label order.
pub fn render_tensor_vector(v: &TensorVector) -> String {
    render_combination(
        v.iter()
            .map(|(t, c)| (render_tensor(t), c.clone()))
            .collect(),
    )
}

/// Canonical rendering of a partition.
pub fn render_partition(p: &Partition) -> String {
    let parts: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SL: Algebra = Algebra::SlInf;
    const A2: Algebra = Algebra::Affine { n: 2 };

    #[test]
    fn flat_words_parse_in_both_spellings() {
        let w = parse_word("v3 ^ v1 ^ v-2", SL).unwrap();
        assert_eq!(w, PureTensor::finite(vec![3, 1, -2]));
        let t = parse_word("v3 (x) v1 (x) v-2", SL).unwrap();
        assert_eq!(t, w);
    }

    #[test]
    fn letter_exponent_factors_resolve_through_the_rank() {
        // z^1*v[2] at rank 2 is flat 2 - 2*1 = 0
        let w = parse_word("z^1*v[2] ^ z^1*v[1] | vac(-2)", A2).unwrap();
        assert_eq!(w, PureTensor::semi_infinite(vec![0, -1], -2));
        assert!(parse_word("z^1*v[3]", A2).is_err());
        assert!(parse_word("z^1*v[2]", SL).is_err());
        assert_eq!(parse_word("v[2]", A2).unwrap(), PureTensor::finite(vec![2]));
    }

    #[test]
    fn tail_spellings_agree() {
        let marker = parse_word("v1 | vac(-1)", SL).unwrap();
        let dots = parse_word("v1 ^ v-1 ^ v-2 ...", SL).unwrap();
        assert_eq!(marker.canonical(), dots.canonical());
        // `...` needs the two shown values consecutive
        assert!(parse_word("v1 ^ v-1 ^ v-3 ...", SL).is_err());
        assert!(parse_word("v1 ...", SL).is_err());
    }

    #[test]
    fn vacuum_shorthand_names_the_canonical_descents() {
        let v0 = parse_wedge_term("vacuum0", A2).unwrap();
        assert_eq!(v0, WedgeTerm::class_vacuum(A2, 0));
        let c2 = parse_wedge_term("vacuum2", SL).unwrap();
        assert_eq!(c2, WedgeTerm::charge_vacuum(2));
    }

    #[test]
    fn malformed_word_reports_the_offset_of_the_bad_token() {
        let err = parse_word("v ^^ v1", SL).unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(err.message.contains("integer"));
        let err = parse_word("v1 ^ ^ v2", SL).unwrap_err();
        assert_eq!(err.offset, 5);
    }

    #[test]
    fn wedge_rendering_matches_the_published_examples() {
        let w = WedgeTerm::new(PureTensor::semi_infinite(vec![1], -1)).unwrap();
        assert_eq!(render_wedge_term(&w), "v1 ^ v-1 ^ v-2 ...");
        let vac = WedgeTerm::class_vacuum(A2, 0);
        assert_eq!(render_wedge_term(&vac), "v0 ^ v-1 ...");
        let finite = WedgeTerm::new(PureTensor::finite(vec![2, 1])).unwrap();
        assert_eq!(render_wedge_term(&finite), "v2 ^ v1");
    }

    #[test]
    fn combinations_render_with_canonical_coefficient_shapes() {
        let w21 = WedgeTerm::new(PureTensor::finite(vec![2, 1])).unwrap();
        let w30 = WedgeTerm::new(PureTensor::finite(vec![3, 0])).unwrap();
        let mut v = WedgeVector::zero();
        v.add_term(w21.clone(), LaurentQ::monomial(-1, 1));
        assert_eq!(render_wedge_vector(&v), "-q * (v2 ^ v1)");
        v.add_term(w30.clone(), LaurentQ::one());
        assert_eq!(render_wedge_vector(&v), "-q * (v2 ^ v1) + v3 ^ v0");
        let mut u = WedgeVector::zero();
        u.add_term(w21.clone(), LaurentQ::q_pow(2) - LaurentQ::one());
        assert_eq!(render_wedge_vector(&u), "(q^2 - 1) * (v2 ^ v1)");
        assert_eq!(render_wedge_vector(&WedgeVector::zero()), "0");
        // negative monomials join with ` - `, and the join parses back
        let mut d = WedgeVector::zero();
        d.add_term(w21, LaurentQ::one());
        d.add_term(w30, LaurentQ::monomial(-1, 1));
        assert_eq!(render_wedge_vector(&d), "v2 ^ v1 - q * (v3 ^ v0)");
        assert_eq!(
            parse_wedge_vector("v2 ^ v1 - q * (v3 ^ v0)", SL).unwrap(),
            d
        );
    }

    #[test]
    fn generator_labels_parse_to_their_algebras() {
        assert_eq!(
            parse_generator("e[3]", 2).unwrap(),
            GeneratorLabel::sl_inf(GeneratorKind::E, 3)
        );
        assert_eq!(
            parse_generator("K[0]", 2).unwrap(),
            GeneratorLabel::affine(2, GeneratorKind::K, 0)
        );
        assert_eq!(
            parse_generator("E[0;-2]", 3).unwrap(),
            GeneratorLabel::affine_graded(3, GeneratorKind::EGraded, 0, -2)
        );
        assert!(parse_generator("e[1;2]", 2).is_err());
        assert!(parse_generator("Q[1]", 2).is_err());
    }

    #[test]
    fn partitions_round_trip_and_reject_bad_shapes() {
        let p = parse_partition("[3,2]").unwrap();
        assert_eq!(p, Partition::new(vec![3, 2]));
        assert_eq!(render_partition(&p), "[3,2]");
        assert_eq!(parse_partition("[]").unwrap(), Partition::empty());
        assert_eq!(render_partition(&Partition::empty()), "[]");
        assert!(parse_partition("[2,3]").is_err());
        assert!(parse_partition("[0]").is_err());
    }

    #[test]
    fn coefficients_round_trip_through_their_canonical_strings() {
        let samples = [
            LaurentQ::one(),
            LaurentQ::int(-1),
            LaurentQ::monomial(-1, 1),
            LaurentQ::monomial(2, -3),
            LaurentQ::q_pow(2) - LaurentQ::one(),
            LaurentQ::monomial(-5, 4) + LaurentQ::monomial(3, 0) - LaurentQ::q_pow(-1),
        ];
        for c in samples {
            let text = c.to_string();
            assert_eq!(parse_laurent(&text).unwrap(), c, "through `{text}`");
        }
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentQ> {
        proptest::collection::vec((-4i64..=4, -9i64..=9), 0..4).prop_map(|terms| {
            terms.into_iter().fold(LaurentQ::zero(), |acc, (k, c)| {
                acc + LaurentQ::monomial(c, k)
            })
        })
    }

    fn arb_wedge_term() -> impl Strategy<Value = WedgeTerm> {
        (
            proptest::collection::btree_set(-6i64..=6, 1..4),
            proptest::option::of(0i64..=2),
        )
            .prop_map(|(set, tail_gap)| {
                let values: Vec<i64> = set.into_iter().rev().collect();
                let tensor = match tail_gap {
                    None => PureTensor::finite(values),
                    Some(gap) => {
                        let tail = values.last().copied().unwrap_or(0) - 1 - gap;
                        PureTensor::semi_infinite(values, tail)
                    }
                };
                WedgeTerm::new(tensor).expect("strictly decreasing by construction")
            })
    }

    proptest! {
        #[test]
        fn random_wedge_vectors_round_trip(
            terms in proptest::collection::vec((arb_wedge_term(), arb_laurent()), 0..4)
        ) {
            let mut v = WedgeVector::zero();
            for (w, c) in terms {
                v.add_term(w, c);
            }
            let text = render_wedge_vector(&v);
            let back = parse_wedge_vector(&text, SL).unwrap();
            prop_assert_eq!(back, v);
        }

        #[test]
        fn random_laurent_coefficients_round_trip(c in arb_laurent()) {
            let text = c.to_string();
            prop_assert_eq!(parse_laurent(&text).unwrap(), c);
        }
    }
}
