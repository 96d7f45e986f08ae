#include "swanlab/expr_parser.hpp"

namespace swanlab {

std::vector<Token> tokenize(const std::string& s, bool join_wedges) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace((unsigned char)c)) {
      ++i;
      continue;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
      out.push_back({Token::Number, s.substr(i, j - i)});
      i = j;
      continue;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i)});
      i = j;
      continue;
    }
    if (std::string("+-*/^()").find(c) != std::string::npos) {
      out.push_back({Token::Op, std::string(1, c)});
      ++i;
      continue;
    }
    throw Error(Errc::parse_error, std::string("unexpected character '") + c + "'");
  }
  if (join_wedges) {
    std::vector<Token> j;
    for (size_t k = 0; k < out.size(); ++k) {
      if (out[k].kind == Token::Ident && out[k].text.rfind("dx", 0) == 0 && k + 2 < out.size() &&
          out[k + 1].kind == Token::Op && out[k + 1].text == "^" &&
          out[k + 2].kind == Token::Ident && out[k + 2].text.rfind("dx", 0) == 0) {
        j.push_back({Token::Ident, out[k].text + "^" + out[k + 2].text});
        k += 2;
      } else {
        j.push_back(out[k]);
      }
    }
    out.swap(j);
  }
  out.push_back({Token::End, ""});
  return out;
}

}  // namespace swanlab
