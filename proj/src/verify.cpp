#include "assgp/verify.hpp"

#include <array>

#include "assgp/errors.hpp"

namespace assgp {

std::string Report::summary() const {
  std::size_t bad = 0;
  for (const auto& e : entries) {
    if (!e.pass) ++bad;
  }
  return std::to_string(entries.size() - bad) + "/" +
         std::to_string(entries.size()) + " checks passed";
}

namespace {

Word conjProduct(Letter x, const Word& u, const Word& v) {
  if (x == 0) return mul(u, v);
  Word xs = Word::letter(x);
  return reduceConcat(std::array<Word, 4>{xs, u, v, inv(xs)});
}

// Stored level data of this system only (parents hold their own).
void checkLevelData(const SystemPtr& sys, Report& rep) {
  bool overAlphabet = true;
  bool symmetric = true;
  std::string detail;
  for (int i = 0; i <= sys->depth(); ++i) {
    const LevelSpec& lv = sys->level(i);
    for (const Word& w : lv.explicitWords) {
      if (!sys->alphabet().containsWord(w)) {
        overAlphabet = false;
        detail = "level " + std::to_string(i) + " explicit word off-alphabet";
      }
      if (!lv.hasExplicit(inv(w))) {
        symmetric = false;
        detail = "level " + std::to_string(i) + " misses an inverse";
      }
    }
    for (const Word& c : lv.cyclicGens) {
      if (!sys->alphabet().containsWord(c)) {
        overAlphabet = false;
        detail = "level " + std::to_string(i) + " cyclic generator off-alphabet";
      }
    }
    for (auto& [lo, hi] : lv.cyclicRanges) {
      if (!sys->alphabet().containsAll(GenSet::range(lo, hi))) {
        overAlphabet = false;
        detail = "level " + std::to_string(i) + " cyclic range off-alphabet";
      }
    }
    if (i < sys->depth() && lv.hasCyclicData()) {
      rep.add("(structure)", false,
              "cyclic descriptors above the bottom level " + std::to_string(i));
    }
  }
  rep.add("(1_U)", overAlphabet, overAlphabet ? "" : detail);
  rep.add("(2_U)", symmetric,
          symmetric ? "explicit sets closed under inversion" : detail);
}

}  // namespace

Report verifySystem(const SystemPtr& sys, const VerifyOptions& opts) {
  Report rep;
  if (!sys) {
    rep.add("(input)", false, "null system");
    return rep;
  }
  checkLevelData(sys, rep);

  // (4_U) and the identity remark: e certifies at every level.
  bool idOk = true;
  std::string idDetail;
  for (int i = 0; i <= sys->depth(); ++i) {
    try {
      TreePtr t = identityCert(sys, i);
      auto r = checkCertificate(sys, t, i);
      if (!r.ok) {
        idOk = false;
        idDetail = "level " + std::to_string(i) + ": " + r.why;
      }
    } catch (const Error& e) {
      idOk = false;
      idDetail = "level " + std::to_string(i) + ": " + e.what();
    }
  }
  rep.add("(4_U)", idOk, idOk ? "e certified at every level" : idDetail);

  // (2_U) on samples: certified elements mirror to certified inverses.
  {
    TreeSampler sampler(sys, opts.seed ^ 0x2222, opts.sampler);
    std::size_t tested = 0, ok = 0;
    std::string detail;
    for (int i = 0; i <= sys->depth(); ++i) {
      for (std::size_t s = 0; s < opts.samples / 4 + 1; ++s) {
        auto it = sampler.sample(i);
        if (!it) continue;
        ++tested;
        try {
          TreePtr m = invCert(sys, it->cert);
          auto r = checkCertificate(sys, m, i);
          if (r.ok && m->word == inv(it->word)) {
            ++ok;
          } else {
            detail = r.ok ? "mirror word mismatch" : r.why;
          }
        } catch (const Error& e) {
          detail = e.what();
        }
      }
    }
    rep.add("(2_U)-sampled", tested == ok,
            tested == ok ? std::to_string(ok) + "/" + std::to_string(tested) +
                               " sampled inverses certified"
                         : detail);
  }

  // (3_U) on samples: conjugated squares of certified level-(i+1) elements
  // obtain level-i certificates.
  TreeSampler sampler(sys, opts.seed, opts.sampler);
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  std::size_t attempts = 0, successes = 0, skipped = 0;
  std::string failDetail;
  for (int i = 0; i < sys->depth(); ++i) {
    for (std::size_t s = 0; s < opts.samples; ++s) {
      auto u = sampler.sample(i + 1);
      auto v = sampler.sample(i + 1);
      if (!u || !v) {
        ++skipped;
        continue;
      }
      for (std::size_t cx = 0; cx < opts.conjugatorsPerSample; ++cx) {
        // conjugator: e for cx == 0, then random signed letters
        Letter x = 0;
        if (cx > 0) {
          std::uint64_t n = sys->alphabet().count();
          std::uniform_int_distribution<std::uint64_t> d(0, 2 * n - 1);
          std::uint64_t pick = d(rng);
          int sign = pick % 2 == 0 ? 1 : -1;
          std::uint64_t index = pick / 2;
          for (auto& [lo, hi] : sys->alphabet().ranges()) {
            std::uint64_t len = hi - lo;
            if (index < len) {
              x = letterOf(lo + static_cast<GenId>(index), sign);
              break;
            }
            index -= len;
          }
        }
        ++attempts;
        try {
          TreePtr cert;
          if (levelAcceptsConj(*sys, i)) {
            cert = DerivationTree::conj(i, x, u->cert, v->cert);
          } else {
            // explicit-only level: the conjugated square must be found there
            Word prod = conjProduct(x, u->word, v->word);
            Verdict verdict = memberDecide(sys, i, prod, opts.search);
            if (!verdict.in()) {
              failDetail = "level " + std::to_string(i) +
                           ": conjugated square not recovered in the level";
              continue;
            }
            cert = verdict.cert;
          }
          auto r = checkCertificate(sys, cert, i);
          if (r.ok) {
            ++successes;
          } else {
            failDetail = "level " + std::to_string(i) + ": " + r.why;
          }
        } catch (const Error& e) {
          failDetail = "level " + std::to_string(i) + ": " + e.what();
        }
      }
    }
  }
  bool threeOk = successes == attempts && attempts > 0;
  if (sys->depth() == 0) {
    threeOk = true;  // no consecutive levels to relate
  }
  rep.add("(3_U)", threeOk,
          threeOk ? std::to_string(successes) + "/" + std::to_string(attempts) +
                        " sampled conjugated squares certified" +
                        (skipped ? " (" + std::to_string(skipped) + " skipped)" : "")
                  : failDetail);
  return rep;
}

Report isExtension(const SystemPtr& big, const SystemPtr& small,
                   const VerifyOptions& opts) {
  Report rep;
  if (!big || !small) {
    rep.add("(input)", false, "null system");
    return rep;
  }
  bool alphaOk = big->alphabet().containsAll(small->alphabet());
  rep.add("(i)", alphaOk, alphaOk ? "" : "base alphabet not contained");
  bool depthOk = small->depth() <= big->depth();
  rep.add("(ii)", depthOk, depthOk ? "" : "depth decreased");
  if (!alphaOk || !depthOk) return rep;

  bool chained = NbhdSystem::isAncestorOf(small.get(), big.get());

  // (iii), inclusion direction: small-certified elements certify in big.
  std::size_t incAttempts = 0, incOk = 0;
  std::string incDetail;
  auto pushInclusion = [&](const Word& w, const TreePtr& cert, int level) {
    ++incAttempts;
    try {
      TreePtr lifted;
      if (chained && cert) {
        lifted = liftCert(small, big, cert);
      } else {
        Verdict v = memberDecide(big, level, w, opts.search);
        if (!v.in()) {
          incDetail = "level " + std::to_string(level) + ": not certified in the extension";
          return;
        }
        lifted = v.cert;
      }
      auto r = checkCertificate(big, lifted, level);
      if (r.ok) {
        ++incOk;
      } else {
        incDetail = "level " + std::to_string(level) + ": " + r.why;
      }
    } catch (const Error& e) {
      incDetail = e.what();
    }
  };
  for (int i = 0; i <= small->depth(); ++i) {
    std::size_t pushed = 0;
    if (small->kind() == SystemKind::Seed || small->kind() == SystemKind::Raw) {
      for (const Word& w : small->level(i).explicitWords) {
        if (pushed++ >= opts.explicitCap) break;
        pushInclusion(w, DerivationTree::explicitLeaf(i, w), i);
      }
    }
    TreeSampler sampler(small, opts.seed + i, opts.sampler);
    for (std::size_t s = 0; s < opts.samples; ++s) {
      auto it = sampler.sample(i);
      if (!it) continue;
      pushInclusion(it->word, it->cert, i);
    }
  }
  rep.add("(iii)-inclusion", incAttempts == incOk,
          incAttempts == incOk
              ? std::to_string(incOk) + "/" + std::to_string(incAttempts) + " lifted"
              : incDetail);

  // (iii), trace direction: big-certified elements over the small alphabet
  // decide into the small levels.
  std::size_t trAttempts = 0, trOk = 0, trSkipped = 0;
  std::string trDetail;
  TreeSampler bigSampler(big, opts.seed ^ 0x5151, opts.sampler);
  for (int i = 0; i <= small->depth(); ++i) {
    for (std::size_t s = 0; s < opts.samples; ++s) {
      auto it = bigSampler.sample(i);
      if (!it) continue;
      if (!small->alphabet().containsWord(it->word)) {
        ++trSkipped;
        continue;
      }
      ++trAttempts;
      try {
        TreePtr down;
        if (chained) {
          down = transportToAncestor(big, small, it->cert);
        } else {
          Verdict v = memberDecide(small, i, it->word, opts.search);
          if (!v.in()) {
            trDetail = "level " + std::to_string(i) + ": trace not recovered";
            continue;
          }
          down = v.cert;
        }
        auto r = checkCertificate(small, down, i);
        if (r.ok && down->word == it->word) {
          ++trOk;
        } else {
          trDetail = "level " + std::to_string(i) + ": " +
                     (r.ok ? "word changed in transport" : r.why);
        }
      } catch (const Error& e) {
        trDetail = e.what();
      }
    }
  }
  rep.add("(iii)-trace", trAttempts == trOk,
          trAttempts == trOk
              ? std::to_string(trOk) + "/" + std::to_string(trAttempts) +
                    " traced (" + std::to_string(trSkipped) + " off-alphabet skipped)"
              : trDetail);
  return rep;
}

}  // namespace assgp
