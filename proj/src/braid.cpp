#include "okh/braid.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace okh {

int BraidWord::positive_count() const {
    return static_cast<int>(std::count_if(letters.begin(), letters.end(),
                                          [](int l) { return l > 0; }));
}

int BraidWord::negative_count() const {
    return length() - positive_count();
}

int BraidWord::self_linking() const {
    return -strands + positive_count() - negative_count();
}

static int inferred_strands(const std::vector<int>& letters) {
    int m = 0;
    for (int l : letters) m = std::max(m, std::abs(l));
    return m + 1;
}

BraidWord make_braid(std::vector<int> letters, int strands) {
    for (int l : letters) {
        if (l == 0) throw MalformedWord("braid letter 0 is not a generator");
    }
    int needed = inferred_strands(letters);
    if (strands == 0) {
        strands = needed;
    } else if (strands < 1) {
        throw MalformedWord("strand count must be at least 1");
    } else if (strands < needed) {
        std::ostringstream os;
        os << "letter " << *std::max_element(letters.begin(), letters.end(),
                                             [](int a, int b) { return std::abs(a) < std::abs(b); })
           << " needs at least " << needed << " strands, got " << strands;
        throw StrandOutOfRange(os.str());
    }
    return BraidWord{std::move(letters), strands};
}

std::string to_text(const BraidWord& b) {
    std::ostringstream os;
    for (size_t i = 0; i < b.letters.size(); ++i) {
        if (i) os << ',';
        os << b.letters[i];
    }
    if (b.strands != inferred_strands(b.letters)) os << '@' << b.strands;
    return os.str();
}

BraidWord parse_braid(const std::string& text) {
    std::string body = text;
    int strands = 0;
    if (auto at = text.find('@'); at != std::string::npos) {
        body = text.substr(0, at);
        std::string tail = text.substr(at + 1);
        size_t pos = 0;
        try {
            strands = std::stoi(tail, &pos);
        } catch (const std::exception&) {
            throw MalformedWord("bad strand count after '@' in \"" + text + "\"");
        }
        while (pos < tail.size() && std::isspace(static_cast<unsigned char>(tail[pos]))) ++pos;
        if (pos != tail.size())
            throw MalformedWord("bad strand count after '@' in \"" + text + "\"");
    }
    std::vector<int> letters;
    std::string tok;
    std::istringstream is(body);
    bool any_token = false;
    while (std::getline(is, tok, ',')) {
        std::string t;
        for (char c : tok)
            if (!std::isspace(static_cast<unsigned char>(c))) t += c;
        if (t.empty()) {
            if (any_token || !letters.empty())
                throw MalformedWord("empty letter in \"" + text + "\"");
            continue; // wholly empty body -> empty word
        }
        any_token = true;
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(t, &pos);
        } catch (const std::exception&) {
            throw MalformedWord("bad letter \"" + t + "\" in \"" + text + "\"");
        }
        if (pos != t.size())
            throw MalformedWord("bad letter \"" + t + "\" in \"" + text + "\"");
        letters.push_back(v);
    }
    return make_braid(std::move(letters), strands);
}

BraidWord mirror(const BraidWord& b) {
    BraidWord out = b;
    for (int& l : out.letters) l = -l;
    return out;
}

BraidWord reverse(const BraidWord& b) {
    BraidWord out = b;
    std::reverse(out.letters.begin(), out.letters.end());
    return out;
}

BraidWord delete_letter(const BraidWord& b, int index) {
    if (index < 0 || index >= b.length())
        throw IndexError("letter index " + std::to_string(index) + " out of range");
    BraidWord out = b;
    out.letters.erase(out.letters.begin() + index);
    return out;
}

BraidWord connect_sum(const BraidWord& b1, const BraidWord& b2) {
    BraidWord out;
    out.strands = b1.strands + b2.strands - 1;
    out.letters = b1.letters;
    int shift = b1.strands - 1;
    for (int l : b2.letters) out.letters.push_back(l > 0 ? l + shift : l - shift);
    return out;
}

BraidWord conjugate(const BraidWord& b, int k) {
    if (k == 0 || std::abs(k) > b.strands - 1)
        throw StrandOutOfRange("conjugation index " + std::to_string(k) +
                               " out of range for " + std::to_string(b.strands) + " strands");
    BraidWord out = b;
    out.letters.insert(out.letters.begin(), -k);
    out.letters.push_back(k);
    return out;
}

BraidWord stabilize_positive(const BraidWord& b) {
    BraidWord out = b;
    out.letters.push_back(b.strands);
    out.strands = b.strands + 1;
    return out;
}

BraidWord stabilize_negative(const BraidWord& b) {
    BraidWord out = b;
    out.letters.push_back(-b.strands);
    out.strands = b.strands + 1;
    return out;
}

BraidWord braid_relation(const BraidWord& b, int site) {
    const int n = b.length();
    if (site >= 0 && site + 1 < n) {
        int x = b.letters[site], y = b.letters[site + 1];
        if (std::abs(std::abs(x) - std::abs(y)) >= 2) {
            BraidWord out = b;
            std::swap(out.letters[site], out.letters[site + 1]);
            return out;
        }
    }
    if (site >= 0 && site + 2 < n) {
        int x = b.letters[site], y = b.letters[site + 1], z = b.letters[site + 2];
        bool same_sign = (x > 0) == (y > 0);
        if (x == z && same_sign && std::abs(std::abs(x) - std::abs(y)) == 1) {
            BraidWord out = b;
            out.letters[site] = y;
            out.letters[site + 1] = x;
            out.letters[site + 2] = y;
            return out;
        }
    }
    throw RelationNotApplicable("no braid rewrite applies at site " + std::to_string(site));
}

} // namespace okh
