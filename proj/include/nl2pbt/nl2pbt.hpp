#pragma once

#include "nl2pbt/category.hpp"
#include "nl2pbt/codegen.hpp"
#include "nl2pbt/corpus.hpp"
#include "nl2pbt/error.hpp"
#include "nl2pbt/lexicon.hpp"
#include "nl2pbt/parser.hpp"
#include "nl2pbt/term.hpp"
