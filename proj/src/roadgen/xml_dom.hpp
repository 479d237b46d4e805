#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include <boost/property_tree/detail/rapidxml.hpp>

namespace roadgen {

namespace rapidxml = boost::property_tree::detail::rapidxml;

// Parsed document owning its character buffer.
struct XmlDocument {
  std::vector<char> buffer;
  rapidxml::xml_document<char> doc;

  rapidxml::xml_node<char>* root() const { return doc.first_node(); }
};

// Strict parse: closing tags must match and exactly one root element may
// appear. Throws ParseError with 1-based line and column.
std::unique_ptr<XmlDocument> parse_xml(std::string_view text);

}  // namespace roadgen
