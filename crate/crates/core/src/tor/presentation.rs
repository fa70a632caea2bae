//! Finitely presented graded modules and the builtin presentations.

use std::collections::HashMap;

use serde_json::Value;

use super::{GradedModuleData, RingSpec};
use crate::algebra::{e_monomials, parse_rational, rat, Generator, Monomial, Rational};
use crate::error::{Error, Result};
use crate::linalg::{cokernel, Cokernel, SparseMatrix, SparseVec};

/// A relation `sum c * v * gen` with `v` a monomial in the `e_i`.
pub type Relation = Vec<(Rational, Monomial, String)>;

/// Generators with internal degrees, relations, and tail families: a tail
/// `(gen, a)` stands for the relations `e_i * gen = 0` for every `i >= a`.
#[derive(Clone, Debug, PartialEq)]
pub struct FinitePresentation {
    pub ring: RingSpec,
    pub generators: Vec<(String, u32)>,
    pub relations: Vec<Relation>,
    pub tails: Vec<(String, u32)>,
}

impl FinitePresentation {
    fn gen_index(&self, label: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|(l, _)| l == label)
            .ok_or_else(|| Error::Spec(format!("unknown generator label {label:?}")))
    }

    fn validate(&self) -> Result<Vec<u32>> {
        for (k, (l, _)) in self.generators.iter().enumerate() {
            if self.generators[..k].iter().any(|(o, _)| o == l) {
                return Err(Error::Spec(format!("duplicate generator label {l:?}")));
            }
        }
        let mut degs = Vec::new();
        for (r, rel) in self.relations.iter().enumerate() {
            let mut deg = None;
            for (_, v, g) in rel {
                if !v.is_classical() {
                    return Err(Error::Spec(format!("relation #{r} multiplies by a twisted class")));
                }
                for &(gen, _) in v.factors() {
                    if let Generator::E(i) = gen {
                        if !self.ring.contains(i) {
                            return Err(Error::Spec(format!("relation #{r} uses e_{i} outside the ring")));
                        }
                    }
                }
                let t = v.total_degree() + self.generators[self.gen_index(g)?].1;
                match deg {
                    None => deg = Some(t),
                    Some(d) if d != t => return Err(Error::InhomogeneousRelation(r)),
                    _ => {}
                }
            }
            degs.push(deg.unwrap_or(0));
        }
        for (g, _) in &self.tails {
            self.gen_index(g)?;
        }
        Ok(degs)
    }
}

fn cap(ring: RingSpec) -> Option<u32> {
    match ring {
        RingSpec::Finite(l) => Some(l),
        RingSpec::All => None,
    }
}

struct Piece {
    free: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
    quotient: Cokernel,
}

/// The graded quotient of the free module by the relations, degree by degree
/// up to `bound`, with the induced `e_i`-actions.
pub fn module_from_presentation(p: &FinitePresentation, bound: u32) -> Result<GradedModuleData> {
    let rel_degs = p.validate()?;
    let ring = p.ring;
    let mut pieces = Vec::new();
    for t in 0..=bound {
        let mut free = Vec::new();
        for (g, (_, deg)) in p.generators.iter().enumerate() {
            if *deg <= t {
                for v in e_monomials(t - deg, cap(ring)) {
                    free.push((g, v));
                }
            }
        }
        let index: HashMap<(usize, Monomial), usize> =
            free.iter().cloned().enumerate().map(|(k, x)| (x, k)).collect();
        let mut rels: Vec<SparseVec> = Vec::new();
        let mut push = |terms: Vec<(usize, Monomial, Rational)>| {
            let mut acc: HashMap<usize, Rational> = HashMap::new();
            for (g, v, c) in terms {
                *acc.entry(index[&(g, v)]).or_insert_with(|| rat(0, 1)) += c;
            }
            let mut vec: SparseVec = acc.into_iter().filter(|(_, c)| *c != rat(0, 1)).collect();
            vec.sort_by_key(|e| e.0);
            rels.push(vec);
        };
        for (rel, &deg) in p.relations.iter().zip(&rel_degs) {
            if deg > t {
                continue;
            }
            for w in e_monomials(t - deg, cap(ring)) {
                let terms = rel
                    .iter()
                    .map(|(c, v, g)| Ok((p.gen_index(g)?, w.mul(v), c.clone())))
                    .collect::<Result<Vec<_>>>()?;
                push(terms);
            }
        }
        for (g, from) in &p.tails {
            let gi = p.gen_index(g)?;
            let gdeg = p.generators[gi].1;
            let mut a = *from;
            while gdeg + 2 * a <= t && ring.contains(a) {
                for w in e_monomials(t - gdeg - 2 * a, cap(ring)) {
                    push(vec![(gi, w.mul_gen(Generator::E(a)), rat(1, 1))]);
                }
                a += 1;
            }
        }
        let quotient = cokernel(&SparseMatrix::from_columns(free.len(), &rels));
        pieces.push(Piece { free, index, quotient });
    }

    let dims: Vec<usize> = pieces.iter().map(|pc| pc.quotient.dim()).collect();
    let mut module = GradedModuleData::new(ring, dims);
    for (t, pc) in pieces.iter().enumerate() {
        module.labels[t] = pc
            .quotient
            .reps
            .iter()
            .map(|&r| {
                let (g, v) = &pc.free[r];
                if v.is_one() {
                    p.generators[*g].0.clone()
                } else {
                    format!("{v}*{}", p.generators[*g].0)
                }
            })
            .collect();
    }
    for t in 0..=bound {
        let src = &pieces[t as usize];
        for i in ring.indices_up_to(bound - t) {
            let tgt = &pieces[(t + 2 * i) as usize];
            if src.quotient.dim() == 0 || tgt.quotient.dim() == 0 {
                continue;
            }
            let cols: Vec<SparseVec> = src
                .quotient
                .reps
                .iter()
                .map(|&r| {
                    let (g, v) = &src.free[r];
                    let k = tgt.index[&(*g, v.mul_gen(Generator::E(i)))];
                    crate::linalg::from_dense(&tgt.quotient.reduce(&vec![(k, rat(1, 1))]))
                })
                .collect();
            module.set_action(i, t, SparseMatrix::from_columns(tgt.quotient.dim(), &cols));
        }
    }
    Ok(module)
}

fn emono(pairs: &[(u32, u32)]) -> Monomial {
    Monomial::from_pairs(pairs.iter().map(|&(i, e)| (Generator::E(i), e)))
}

fn mono_rel(pairs: &[(u32, u32)], gen: &str) -> Relation {
    vec![(rat(1, 1), emono(pairs), gen.to_string())]
}

/// The ideal `(e_1^3, e_a e_b : a, b <= 3 except a = b = 1)`.
fn cubic_relations(gen: &str) -> Vec<Relation> {
    vec![
        mono_rel(&[(1, 3)], gen),
        mono_rel(&[(1, 1), (2, 1)], gen),
        mono_rel(&[(1, 1), (3, 1)], gen),
        mono_rel(&[(2, 2)], gen),
        mono_rel(&[(2, 1), (3, 1)], gen),
        mono_rel(&[(3, 2)], gen),
    ]
}

fn rho_relations() -> Vec<Relation> {
    let t = |c: i64, e: &[(u32, u32)], g: &str| (rat(c, 1), emono(e), g.to_string());
    vec![
        vec![t(2, &[(2, 1)], "m03m11"), t(3, &[(1, 1)], "m03m21")],
        vec![t(1, &[(2, 1)], "m02m02"), t(6, &[(1, 1)], "m03m11")],
        vec![t(1, &[(3, 1)], "m02m02"), t(-6, &[(1, 2)], "m04")],
    ]
}

fn prime_summands() -> FinitePresentation {
    let mut relations = cubic_relations("m02m02");
    relations.extend(cubic_relations("m04"));
    relations.extend([
        mono_rel(&[(1, 2)], "m03m11"),
        mono_rel(&[(1, 1), (2, 1)], "m03m11"),
        mono_rel(&[(2, 2)], "m03m11"),
        mono_rel(&[(3, 1)], "m03m11"),
        mono_rel(&[(1, 2)], "m03m21"),
        mono_rel(&[(2, 1)], "m03m21"),
        mono_rel(&[(3, 1)], "m03m21"),
    ]);
    FinitePresentation {
        ring: RingSpec::Finite(3),
        generators: vec![
            ("m02m02".into(), 0),
            ("m04".into(), 2),
            ("m03m11".into(), 2),
            ("m03m21".into(), 4),
        ],
        relations,
        tails: Vec::new(),
    }
}

pub fn builtin_names() -> &'static [&'static str] {
    &[
        "d1-theta",
        "d3-coker",
        "d4-coker",
        "d5-coker",
        "L-m03m21",
        "L-m03m11",
        "L-m04-m02m02",
        "L-prime",
        "L-prime-mod-K",
    ]
}

/// Builtin presentations. Modules over every `e_i` use tail families, so they
/// are exact at any degree bound.
pub fn builtin(name: &str) -> Result<FinitePresentation> {
    let one = |ring, gen: &str, deg, relations: Vec<Relation>, tails: Vec<(String, u32)>| FinitePresentation {
        ring,
        generators: vec![(gen.to_string(), deg)],
        relations,
        tails,
    };
    Ok(match name {
        "d1-theta" => one(RingSpec::All, "theta", 0, vec![], vec![("theta".into(), 1)]),
        "d3-coker" => one(RingSpec::All, "m02", 0, vec![mono_rel(&[(1, 2)], "m02")], vec![("m02".into(), 2)]),
        "d4-coker" => one(RingSpec::All, "m03", 1, vec![mono_rel(&[(1, 2)], "m03")], vec![("m03".into(), 2)]),
        "L-m03m21" => one(
            RingSpec::Finite(3),
            "m03m21",
            4,
            vec![mono_rel(&[(1, 2)], "m03m21"), mono_rel(&[(2, 1)], "m03m21"), mono_rel(&[(3, 1)], "m03m21")],
            vec![],
        ),
        "L-m03m11" => one(
            RingSpec::Finite(3),
            "m03m11",
            2,
            vec![
                mono_rel(&[(1, 2)], "m03m11"),
                mono_rel(&[(2, 2)], "m03m11"),
                mono_rel(&[(1, 1), (2, 1)], "m03m11"),
                mono_rel(&[(3, 1)], "m03m11"),
            ],
            vec![],
        ),
        "L-m04-m02m02" => one(RingSpec::Finite(3), "m02m02", 0, cubic_relations("m02m02"), vec![]),
        "L-prime" => prime_summands(),
        "L-prime-mod-K" => {
            let mut p = prime_summands();
            p.relations.extend(rho_relations());
            p
        }
        "d5-coker" => {
            let mut p = prime_summands();
            p.ring = RingSpec::All;
            p.relations.extend(rho_relations());
            p.tails = vec![
                ("m02m02".into(), 4),
                ("m04".into(), 4),
                ("m03m11".into(), 3),
                ("m03m21".into(), 2),
            ];
            p
        }
        _ => return Err(Error::Unknown { what: "builtin module", name: name.to_string() }),
    })
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Spec(format!("missing field {key:?}")))
}

fn as_u32(v: &Value, what: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| Error::Spec(format!("{what} must be a non-negative integer")))
}

/// Reads the JSON module-spec format.
pub fn parse_module_spec(text: &str) -> Result<FinitePresentation> {
    let v: Value = serde_json::from_str(text)?;
    let ring_v = field(&v, "ring")?;
    let ring = match field(ring_v, "type")?.as_str() {
        Some("finite") => RingSpec::Finite(as_u32(field(ring_v, "ell")?, "ell")?),
        Some("all") => RingSpec::All,
        _ => return Err(Error::Spec("ring type must be \"finite\" or \"all\"".into())),
    };
    let mut generators = Vec::new();
    for g in field(&v, "generators")?.as_array().ok_or_else(|| Error::Spec("generators must be a list".into()))? {
        let label = field(g, "label")?.as_str().ok_or_else(|| Error::Spec("label must be a string".into()))?;
        generators.push((label.to_string(), as_u32(field(g, "degree")?, "degree")?));
    }
    let mut relations = Vec::new();
    if let Some(rels) = v.get("relations") {
        for rel in rels.as_array().ok_or_else(|| Error::Spec("relations must be a list".into()))? {
            let mut terms = Vec::new();
            for t in rel.as_array().ok_or_else(|| Error::Spec("a relation must be a list of terms".into()))? {
                let coeff = match field(t, "coeff")? {
                    Value::String(s) => parse_rational(s)?,
                    Value::Number(n) => parse_rational(&n.to_string())?,
                    _ => return Err(Error::Spec("coeff must be a string or integer".into())),
                };
                let mut pairs = Vec::new();
                if let Some(em) = t.get("emono") {
                    let obj = em.as_object().ok_or_else(|| Error::Spec("emono must be an object".into()))?;
                    for (k, e) in obj {
                        let i: u32 = k.parse().map_err(|_| Error::Spec(format!("bad e-index {k:?}")))?;
                        if i == 0 {
                            return Err(Error::ClassicalIndexZero);
                        }
                        pairs.push((Generator::E(i), as_u32(e, "exponent")?));
                    }
                }
                let gen = field(t, "gen")?.as_str().ok_or_else(|| Error::Spec("gen must be a string".into()))?;
                terms.push((coeff, Monomial::from_pairs(pairs), gen.to_string()));
            }
            relations.push(terms);
        }
    }
    let mut tails = Vec::new();
    if let Some(ts) = v.get("tails") {
        for t in ts.as_array().ok_or_else(|| Error::Spec("tails must be a list".into()))? {
            let gen = field(t, "gen")?.as_str().ok_or_else(|| Error::Spec("gen must be a string".into()))?;
            tails.push((gen.to_string(), as_u32(field(t, "from")?, "from")?));
        }
    }
    let p = FinitePresentation { ring, generators, relations, tails };
    p.validate()?;
    Ok(p)
}
