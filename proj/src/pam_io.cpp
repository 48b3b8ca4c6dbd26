// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pam/pam_io.hpp"

#include <fstream>
#include <sstream>

namespace pam {

namespace {

struct LineTokens {
    std::string keyword;
    std::vector<std::string> args;
};

std::vector<LineTokens> tokenize(std::istream& in) {
    std::vector<LineTokens> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::istringstream ls(raw);
        LineTokens lt;
        if (!(ls >> lt.keyword)) continue;
        std::string tok;
        while (ls >> tok) lt.args.push_back(tok);
        lines.push_back(std::move(lt));
    }
    return lines;
}

// Consumes trailing flag tokens, returning (lo_closed, hi_closed).
std::pair<bool, bool> read_flags(const std::vector<std::string>& args, size_t from,
                                 const std::string& what) {
    bool lo_closed = true, hi_closed = false;
    for (size_t i = from; i < args.size(); ++i) {
        if (args[i] == "lo_open")
            lo_closed = false;
        else if (args[i] == "lo_closed")
            lo_closed = true;
        else if (args[i] == "hi_open")
            hi_closed = false;
        else if (args[i] == "hi_closed")
            hi_closed = true;
        else
            throw Error("unknown token '" + args[i] + "' on a " + what + " line");
    }
    return {lo_closed, hi_closed};
}

}  // namespace

Pam parse_pam(std::istream& in) {
    std::vector<LineTokens> lines = tokenize(in);
    bool have_carrier = false;
    Interval carrier;
    std::vector<Piece> pieces;
    for (const LineTokens& lt : lines) {
        if (lt.keyword == "carrier") {
            if (have_carrier) throw Error("duplicate carrier line");
            if (lt.args.size() < 2) throw Error("carrier line needs <lo> <hi>");
            auto [lc, hc] = read_flags(lt.args, 2, "carrier");
            carrier = Interval(Rational::parse(lt.args[0]), Rational::parse(lt.args[1]), lc, hc);
            have_carrier = true;
        } else if (lt.keyword == "piece") {
            if (lt.args.size() < 4) throw Error("piece line needs <lo> <hi> <a> <b>");
            auto [lc, hc] = read_flags(lt.args, 4, "piece");
            Interval dom(Rational::parse(lt.args[0]), Rational::parse(lt.args[1]), lc, hc);
            AffineMap map(Rational::parse(lt.args[2]), Rational::parse(lt.args[3]));
            pieces.push_back({dom, map});
        } else {
            throw Error("unknown keyword '" + lt.keyword + "' in map definition");
        }
    }
    if (!have_carrier) throw Error("map definition has no carrier line");
    return Pam(carrier, std::move(pieces));
}

Pam parse_pam_text(const std::string& text) {
    std::istringstream in(text);
    return parse_pam(in);
}

Pam load_pam_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open map file " + path);
    return parse_pam(in);
}

namespace {

void append_flags(std::string& s, const Interval& iv) {
    if (!iv.lo_closed) s += " lo_open";
    if (iv.hi_closed) s += " hi_closed";
}

}  // namespace

std::string pam_to_text(const Pam& f) {
    std::string s = "carrier " + f.carrier().lo.to_string() + " " + f.carrier().hi.to_string();
    append_flags(s, f.carrier());
    s += "\n";
    for (const Piece& p : f.pieces()) {
        s += "piece " + p.domain.lo.to_string() + " " + p.domain.hi.to_string() + " " +
             p.map.a.to_string() + " " + p.map.b.to_string();
        append_flags(s, p.domain);
        s += "\n";
    }
    return s;
}

}  // namespace pam
