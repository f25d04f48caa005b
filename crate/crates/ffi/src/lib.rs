//! C ABI for the subshift library.
//!
//! Languages are opaque [`SsLanguage`] handles created by
//! `ss_language_from_*` and released with [`ss_language_free`]. Every call
//! returns an [`SsStatus`]; on failure the message is available from
//! [`ss_last_error_message`] on the same thread. Strings handed out by the
//! library must be released with [`ss_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use subshift::freegroup::FreeGroupWord;
use subshift::fundamental::rank_profile;
use subshift::io::parse_source;
use subshift::lang::{check_primitive, FactorLanguage, Source};
use subshift::presets;
use subshift::rauzy::RauzyGraph;
use subshift::returns::{delayed_return_words, is_code, return_words};
use subshift::stallings::{fold, is_basis_of_full_group};
use subshift::tree::scan_tree_condition;
use subshift::verify::{verify_preset, VerifyConfig};
use subshift::word::Word;
use subshift::Error;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    NonPrimitive = 3,
    HorizonExceeded = 4,
    NotAFactor = 5,
    Incomplete = 6,
    Computation = 7,
    Panic = 8,
}

/// A factor language truncated at a horizon.
pub struct SsLanguage {
    lang: FactorLanguage,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> SsStatus {
    match e {
        Error::InvalidInput(_) | Error::EmptySplit | Error::OddOrder(_) | Error::OrderMismatch { .. } => {
            SsStatus::InvalidInput
        }
        Error::NonPrimitive | Error::NoSeedLetter(_) => SsStatus::NonPrimitive,
        Error::HorizonExceeded { .. } => SsStatus::HorizonExceeded,
        Error::NotAFactor(_) => SsStatus::NotAFactor,
        Error::Incomplete { .. } => SsStatus::Incomplete,
        _ => SsStatus::Computation,
    }
}

struct Failure(SsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SsStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, recording the error message and catching panics.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SsStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SsStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn language<'a>(p: *const SsLanguage) -> Result<&'a FactorLanguage, Failure> {
    p.as_ref().map(|h| &h.lang).ok_or_else(|| null("language"))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(SsStatus::Computation, "output has a nul byte".into()))?;
    put(out, c.into_raw(), "output")
}

unsafe fn build(source: Source, horizon: usize, out: *mut *mut SsLanguage) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output"));
    }
    if let Source::Substitution(sub) = &source {
        if !check_primitive(sub).primitive {
            return Err(Error::NonPrimitive.into());
        }
    }
    let lang = FactorLanguage::build(&source, horizon)?;
    out.write(Box::into_raw(Box::new(SsLanguage { lang })));
    Ok(())
}

/// Language of a built-in preset, with factors up to length `horizon`.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ss_language_from_preset(
    name: *const c_char,
    horizon: usize,
    out: *mut *mut SsLanguage,
) -> SsStatus {
    guard(|| build(presets::preset(text(name, "name")?)?, horizon, out))
}

/// Language of a source given as JSON (`{"alphabet": .., "rules": ..}` or
/// `{"periodic": ..}`).
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ss_language_from_json(
    json: *const c_char,
    horizon: usize,
    out: *mut *mut SsLanguage,
) -> SsStatus {
    guard(|| build(parse_source(text(json, "json")?)?, horizon, out))
}

/// # Safety
/// `lang` must come from `ss_language_from_*` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ss_language_free(lang: *mut SsLanguage) {
    if !lang.is_null() {
        drop(Box::from_raw(lang));
    }
}

/// Number of factors of length `k`.
///
/// # Safety
/// `lang` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ss_language_complexity(lang: *const SsLanguage, k: usize, out: *mut usize) -> SsStatus {
    guard(|| put(out, language(lang)?.complexity(k)?, "output"))
}

/// Is `word` a factor?
///
/// # Safety
/// `lang` must be a live handle, `word` nul-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ss_language_contains(
    lang: *const SsLanguage,
    word: *const c_char,
    out: *mut bool,
) -> SsStatus {
    guard(|| {
        let lang = language(lang)?;
        let w = lang.parse(text(word, "word")?)?;
        put(out, lang.contains(&w)?, "output")
    })
}

fn returns_json(lang: &FactorLanguage, words: &[Word], kind: &str) -> String {
    serde_json::json!({
        "kind": kind,
        "words": words.iter().map(|w| lang.render(w)).collect::<Vec<_>>(),
        "is_code": is_code(words).is_code,
    })
    .to_string()
}

/// Return words of `word` as JSON.
///
/// # Safety
/// `lang` must be a live handle, `word` nul-terminated and `out` valid.
/// The string written to `out` must be released with `ss_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ss_returns_json(
    lang: *const SsLanguage,
    word: *const c_char,
    scan_budget: usize,
    out: *mut *mut c_char,
) -> SsStatus {
    guard(|| {
        let lang = language(lang)?;
        let u = lang.parse(text(word, "word")?)?;
        let set = return_words(lang, &u, scan_budget)?;
        put_string(out, returns_json(lang, &set.words, "plain"))
    })
}

/// Delayed return words of the split `left.right` as JSON.
///
/// # Safety
/// As [`ss_returns_json`], with `left` and `right` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn ss_delayed_returns_json(
    lang: *const SsLanguage,
    left: *const c_char,
    right: *const c_char,
    scan_budget: usize,
    out: *mut *mut c_char,
) -> SsStatus {
    guard(|| {
        let lang = language(lang)?;
        let u1 = lang.parse(text(left, "left")?)?;
        let u2 = lang.parse(text(right, "right")?)?;
        let set = delayed_return_words(lang, &u1, &u2, scan_budget)?;
        put_string(out, returns_json(lang, &set.words, "delayed"))
    })
}

/// Tree condition report for centers up to `max_center`, as JSON.
///
/// # Safety
/// `lang` must be a live handle and `out` valid. Release the string with
/// `ss_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ss_tree_json(lang: *const SsLanguage, max_center: usize, out: *mut *mut c_char) -> SsStatus {
    guard(|| {
        let report = scan_tree_condition(language(lang)?, max_center)?;
        put_string(out, serde_json::to_string(&report).expect("report serializes"))
    })
}

/// Writes the cycle rank of `Σ_{2n}` for `n` in `lo..=hi` into `ranks`,
/// which must hold `hi - lo + 1` entries.
///
/// # Safety
/// `lang` must be a live handle and `ranks` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn ss_rank_profile(
    lang: *const SsLanguage,
    lo: usize,
    hi: usize,
    ranks: *mut usize,
    len: usize,
) -> SsStatus {
    guard(|| {
        let lang = language(lang)?;
        if lo == 0 || hi < lo {
            return Err(Failure(SsStatus::InvalidInput, format!("bad range {lo}..{hi}")));
        }
        if len < hi - lo + 1 {
            return Err(Failure(SsStatus::InvalidInput, format!("buffer of {len} is too short")));
        }
        if ranks.is_null() {
            return Err(null("ranks"));
        }
        for (i, (_, r)) in rank_profile(lang, lo..=hi)?.into_iter().enumerate() {
            ranks.add(i).write(r);
        }
        Ok(())
    })
}

/// Rauzy graph of the given order in DOT.
///
/// # Safety
/// `lang` must be a live handle and `out` valid. Release the string with
/// `ss_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ss_rauzy_dot(lang: *const SsLanguage, order: usize, out: *mut *mut c_char) -> SsStatus {
    guard(|| put_string(out, RauzyGraph::build(language(lang)?, order)?.to_dot()))
}

/// Is the set of `count` words a basis of the free group on the alphabet?
///
/// # Safety
/// `lang` must be a live handle, `words` must point to `count`
/// nul-terminated strings and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ss_is_basis(
    lang: *const SsLanguage,
    words: *const *const c_char,
    count: usize,
    out: *mut bool,
) -> SsStatus {
    guard(|| {
        let lang = language(lang)?;
        if words.is_null() && count > 0 {
            return Err(null("words"));
        }
        let parsed = (0..count)
            .map(|i| Ok(lang.parse(text(*words.add(i), "word")?)?))
            .collect::<Result<Vec<Word>, Failure>>()?;
        put(out, is_basis_of_full_group(&parsed, lang.alphabet().len()), "output")
    })
}

/// Rank of the subgroup generated by the positive words.
///
/// # Safety
/// As [`ss_is_basis`].
#[no_mangle]
pub unsafe extern "C" fn ss_subgroup_rank(
    lang: *const SsLanguage,
    words: *const *const c_char,
    count: usize,
    out: *mut usize,
) -> SsStatus {
    guard(|| {
        let lang = language(lang)?;
        if words.is_null() && count > 0 {
            return Err(null("words"));
        }
        let gens = (0..count)
            .map(|i| Ok(FreeGroupWord::from_letters(&lang.parse(text(*words.add(i), "word")?)?)))
            .collect::<Result<Vec<_>, Failure>>()?;
        put(out, fold(&gens).rank(), "output")
    })
}

/// Runs the verification suite on a preset with default settings and the
/// given seed; writes the JSON report and whether every check passed.
///
/// # Safety
/// `preset` must be nul-terminated; `out` and `passed` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ss_verify_json(
    preset: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> SsStatus {
    guard(|| {
        let name = text(preset, "preset")?;
        if !presets::NAMES.contains(&name) {
            return Err(Failure(SsStatus::InvalidInput, format!("unknown preset '{name}'")));
        }
        let config = VerifyConfig {
            seed,
            ..VerifyConfig::default()
        };
        let report = verify_preset(name, &config)?;
        put(passed, report.passed, "passed")?;
        put_string(out, serde_json::to_string(&report).expect("report serializes"))
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn ss_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
